"""Deterministic, seedable input generators for the benchmark experiments.

Three input families:
  * random chains — protein-like walks on the lattice, one unit axial step
    per bead, starting at the origin;
  * normal clouds — lattice beads with Normal(0, sigma) coordinates, the
    locality knob (small sigma packs beads around the origin, large sigma
    scatters them);
  * random spheres — floating-point unit-diameter spheres uniform in a box.

All output is a pure function of (parameters, seed).  The PRNG is PCG64
seeded through numpy's SeedSequence, and normal deviates come from an
explicit Box-Muller transform over PCG64 uniforms rather than a library
sampler, so sequences are reproducible bit-for-bit across platforms.
"""

from __future__ import annotations

import numpy as np

from .lattice_counter import NEIGHBOR_OFFSETS

Seed = int


def _rng(seed: Seed, *stream) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *stream])))


def random_chain(n: int, seed: Seed) -> tuple[np.ndarray, int]:
    """Random axial walk of n beads starting at (0,0,0).

    Returns (beads, tight_half_extent) where the half-extent is the largest
    absolute coordinate actually reached, so callers can size a lattice
    space no bigger than needed.
    """
    if n < 1:
        raise ValueError(f"chain length must be >= 1, got {n}")
    rng = _rng(seed, 0)
    steps = NEIGHBOR_OFFSETS[rng.integers(0, 6, size=n - 1)]
    beads = np.zeros((n, 3), dtype=np.int64)
    np.cumsum(steps, axis=0, out=beads[1:])
    return beads, int(np.abs(beads).max(initial=0))


def _box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    """count standard-normal deviates via Box-Muller on PCG64 uniforms."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1]: keeps log() finite
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])
    return z[:count]


def normal_cloud(
    n: int, std_dev: float, half_extent: int, seed: Seed
) -> np.ndarray:
    """n beads with coordinates ~ Normal(0, std_dev), rounded and clamped
    to [-half_extent, half_extent]."""
    if n < 1:
        raise ValueError(f"cloud size must be >= 1, got {n}")
    if std_dev <= 0:
        raise ValueError(f"std_dev must be > 0, got {std_dev}")
    rng = _rng(seed, 1)
    z = _box_muller(rng, 3 * n) * std_dev
    coords = np.rint(z).astype(np.int64).reshape(n, 3)
    return np.clip(coords, -half_extent, half_extent)


def random_spheres(n: int, box_edge: float, seed: Seed) -> np.ndarray:
    """n unit-diameter sphere centers uniform in [0, box_edge]^3."""
    if n < 1:
        raise ValueError(f"sphere count must be >= 1, got {n}")
    if box_edge <= 0:
        raise ValueError(f"box_edge must be > 0, got {box_edge}")
    rng = _rng(seed, 2)
    return rng.random((n, 3)) * box_edge

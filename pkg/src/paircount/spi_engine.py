"""Symmetric pairwise interaction (SPI) accumulation engines.

Accumulates sum over i < j of f(obj[i], obj[j]) for a pluggable symmetric
interaction function, under either the straightforward triangular schedule
(outer index i pairs with all j > i) or the balanced circular schedule from
`pair_schedule`.  Both evaluate exactly n(n-1)/2 pairs; the balanced one
caps any single outer index at ceil((n-1)/2) inner steps instead of n-1,
which is what makes it parallelize evenly.

Interaction functions are called with (one object, a batch of partner
objects) and may return a scalar-per-partner array; plain scalar functions
work too via a per-pair fallback.  Integer-valued functions accumulate in
exact Python integers, so totals are identical across schedules and worker
counts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import pair_schedule

Schedule = str  # "standard" | "balanced"

SCHEDULES = ("standard", "balanced")


class InteractionDomainError(ValueError):
    """An interaction function was handed a non-finite object."""


class AccumulationError(ArithmeticError):
    """An interaction function produced a non-finite contribution."""


class SymmetryViolationError(ValueError):
    """An interaction function returned different values for (a,b) and (b,a)."""


@dataclass(frozen=True)
class Sphere:
    """A point sphere of diameter 1 at real coordinates."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class SpiResult:
    total: float | int
    partials: tuple
    pairs_evaluated: int
    depth_per_worker: int
    worker_pairs: tuple


def collision_indicator(a, b):
    """1 if the two unit-diameter spheres' centers are strictly closer than 1.

    Accepts single coordinate triples or batches (broadcasting over the
    leading axes); returns int64 values.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if not np.isfinite(a).all() or not np.isfinite(b).all():
        raise InteractionDomainError("sphere coordinates must be finite")
    d2 = ((a - b) ** 2).sum(axis=-1)
    return (d2 < 1.0).astype(np.int64)


def as_object_array(objects) -> np.ndarray:
    if isinstance(objects, np.ndarray):
        return objects
    if len(objects) > 0 and isinstance(objects[0], Sphere):
        return np.array([[o.x, o.y, o.z] for o in objects], dtype=np.float64)
    return np.asarray(objects)


def _eval_batch(f, a, partners, i: int, js: np.ndarray):
    """Evaluate f(a, partner) over a partner batch, falling back to a scalar
    loop when f does not vectorize.  Returns a Python int or float sum."""
    try:
        vals = np.asarray(f(a, partners))
        if vals.shape != (len(js),):
            raise TypeError
    except (TypeError, ValueError, IndexError):
        vals = np.asarray([f(a, p) for p in partners])
    if not np.isfinite(vals).all():
        bad = int(js[np.nonzero(~np.isfinite(vals))[0][0]])
        raise AccumulationError(f"non-finite contribution for pair ({i}, {bad})")
    total = vals.sum()
    if np.issubdtype(vals.dtype, np.integer) or np.issubdtype(vals.dtype, np.bool_):
        return int(total)
    return float(total)


def _inner_indices(n: int, i: int, schedule: Schedule) -> np.ndarray:
    if schedule == "standard":
        return np.arange(i + 1, n, dtype=np.int64)
    s = np.arange(1, pair_schedule.steps_for(n, i) + 1, dtype=np.int64)
    return (i + s) % n


def _run_outer(obj: np.ndarray, f, outer: range, schedule: Schedule):
    """Accumulate one worker's partial over its contiguous outer-index block."""
    n = len(obj)
    partial = 0
    pairs = 0
    for i in outer:
        js = _inner_indices(n, i, schedule)
        if len(js) == 0:
            continue
        partial = partial + _eval_batch(f, obj[i], obj[js], i, js)
        pairs += len(js)
    return partial, pairs


def _audit_symmetry(obj: np.ndarray, f, rng_seed: int = 0, samples: int = 16) -> None:
    n = len(obj)
    if n < 2:
        return
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    for _ in range(samples):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        ab, ba = f(obj[i], obj[j]), f(obj[j], obj[i])
        if not np.all(np.asarray(ab) == np.asarray(ba)):
            raise SymmetryViolationError(
                f"f({i},{j})={ab} but f({j},{i})={ba}: interaction must be symmetric"
            )


def _depth(n: int, schedule: Schedule) -> int:
    if n <= 1:
        return 0
    if schedule == "standard":
        return n - 1
    return (n - 1 + 1) // 2 if n % 2 == 0 else (n - 1) // 2


def spi_standard(objects, f: Callable, audit_symmetry: bool = False) -> SpiResult:
    """Triangular-schedule accumulation: i ascending, j = i+1 .. n-1."""
    obj = as_object_array(objects)
    if audit_symmetry:
        _audit_symmetry(obj, f)
    n = len(obj)
    total, pairs = _run_outer(obj, f, range(n), "standard")
    return SpiResult(
        total=total,
        partials=(total,),
        pairs_evaluated=pairs,
        depth_per_worker=_depth(n, "standard"),
        worker_pairs=(pairs,),
    )


def spi_balanced(objects, f: Callable, audit_symmetry: bool = False) -> SpiResult:
    """Balanced circular-schedule accumulation; same total, depth halved."""
    obj = as_object_array(objects)
    if audit_symmetry:
        _audit_symmetry(obj, f)
    n = len(obj)
    total, pairs = _run_outer(obj, f, range(n), "balanced")
    return SpiResult(
        total=total,
        partials=(total,),
        pairs_evaluated=pairs,
        depth_per_worker=_depth(n, "balanced"),
        worker_pairs=(pairs,),
    )


def _partition(n: int, workers: int) -> list[range]:
    """Contiguous near-equal blocks of outer indices (sizes differ by <= 1)."""
    base, extra = divmod(n, workers)
    blocks = []
    start = 0
    for w in range(workers):
        size = base + (1 if w < extra else 0)
        blocks.append(range(start, start + size))
        start += size
    return blocks


def spi_parallel(
    objects,
    f: Callable,
    workers: int,
    schedule: Schedule = "balanced",
    audit_symmetry: bool = False,
) -> SpiResult:
    """Data-parallel accumulation: outer indices split contiguously across
    workers, each worker keeps a private partial, reduction sums partials in
    ascending worker order."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if schedule not in SCHEDULES:
        raise ValueError(f"schedule must be one of {SCHEDULES}, got {schedule!r}")
    obj = as_object_array(objects)
    if audit_symmetry:
        _audit_symmetry(obj, f)
    n = len(obj)
    blocks = _partition(n, workers)
    if workers == 1:
        partial, pairs = _run_outer(obj, f, blocks[0], schedule)
        results = [(partial, pairs)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_outer, obj, f, block, schedule) for block in blocks
            ]
            results = [fut.result() for fut in futures]
    partials = tuple(partial for partial, _ in results)
    worker_pairs = tuple(pairs for _, pairs in results)
    total = partials[0] if partials else 0
    for p in partials[1:]:
        total = total + p
    return SpiResult(
        total=total,
        partials=partials,
        pairs_evaluated=sum(worker_pairs),
        depth_per_worker=_depth(n, schedule),
        worker_pairs=worker_pairs,
    )

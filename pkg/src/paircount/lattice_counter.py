"""Linear-time collision and contact counting on a bounded integer lattice.

Beads are punctual objects with integer coordinates confined to the symmetric
cube [-a, a]^3.  A dense occupancy array over that cube lets collisions (two
beads on the same site) and contacts (two beads on 6-adjacent sites) be
counted with O(N) work instead of the O(N^2) all-pairs comparison, at the
cost of O(a^3) virtual memory.  Only cells actually holding beads are ever
written, so physical memory touched stays proportional to N; a touched-cell
list makes the subsequent reset equally sparse.

The brute-force O(N^2) oracles live here too and are the ground truth the
fast counters are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# The six axial unit offsets defining the contact neighborhood.
NEIGHBOR_OFFSETS = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    dtype=np.int64,
)

_CELL_DTYPE = np.uint32
_CELL_MAX = np.iinfo(_CELL_DTYPE).max


class CoordinateRangeError(ValueError):
    """A bead lies outside the [-a, a]^3 cube of its space."""


class OccupancyOverflowError(OverflowError):
    """A cell's occupancy count would exceed the cell counter width."""


class SpaceSizeError(MemoryError):
    """The requested half-extent does not fit in addressable memory."""


@dataclass(frozen=True)
class CountReport:
    """Outcome of one counting pass: the count plus memory-touch accounting."""

    count: int
    beads_processed: int
    cells_touched: int


def as_bead_array(beads) -> np.ndarray:
    """Coerce a bead sequence (tuples, lists or an (N,3) array) to int64 (N,3)."""
    arr = np.asarray(beads, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"bead vector must have shape (N, 3), got {arr.shape}")
    return arr


class LatticeSpace:
    """Dense occupancy grid over [-a, a]^3 with one zero padding cell per face.

    The padding lets contact counting read all six neighbors of a boundary
    bead without bounds checks; padding cells are never written.  Logical
    coordinate (x, y, z) maps to physical index (x+a+1, y+a+1, z+a+1).
    """

    def __init__(self, half_extent: int):
        if half_extent < 0:
            raise ValueError(f"half_extent must be >= 0, got {half_extent}")
        side = 2 * half_extent + 3
        if side**3 > np.iinfo(np.intp).max:
            raise SpaceSizeError(
                f"half_extent {half_extent} needs {side}^3 cells, "
                "beyond the platform index range"
            )
        self.half_extent = half_extent
        try:
            self.cells = np.zeros((side, side, side), dtype=_CELL_DTYPE)
        except MemoryError as exc:
            raise SpaceSizeError(
                f"cannot allocate {side}^3 cells for half_extent {half_extent}"
            ) from exc
        # Flat indices of cells written since the last reset.  Always a
        # superset of the nonzero cells.
        self.touched: list[np.ndarray] = []

    @property
    def interior_cells(self) -> int:
        """Number of cells in [-a, a]^3, excluding padding: (2a+1)^3."""
        return (2 * self.half_extent + 1) ** 3

    def is_zero(self) -> bool:
        return not self.cells.any()

    def _validate(self, beads: np.ndarray) -> None:
        a = self.half_extent
        bad = np.abs(beads) > a
        if bad.any():
            idx = int(np.nonzero(bad.any(axis=1))[0][0])
            raise CoordinateRangeError(
                f"bead {idx} at {tuple(beads[idx])} outside [-{a}, {a}]^3"
            )

    def _flatten(self, beads: np.ndarray) -> np.ndarray:
        shifted = beads + (self.half_extent + 1)
        return np.ravel_multi_index(
            (shifted[:, 0], shifted[:, 1], shifted[:, 2]), self.cells.shape
        )


def new_space(half_extent: int) -> LatticeSpace:
    return LatticeSpace(half_extent)


def interior_cell_count(half_extent: int) -> int:
    """Cells in [-a, a]^3: (2a+1)^3.  Pure sizing arithmetic, no allocation."""
    if half_extent < 0:
        raise ValueError(f"half_extent must be >= 0, got {half_extent}")
    return (2 * half_extent + 1) ** 3


def _place(space: LatticeSpace, beads: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Add every bead to its cell; return (flat indices, unique occupied cells)."""
    space._validate(beads)
    flat = space._flatten(beads)
    occupied = np.unique(flat)
    flat_cells = space.cells.reshape(-1)
    np.add.at(flat_cells, flat, 1)
    if flat_cells[occupied].max(initial=0) >= _CELL_MAX:
        raise OccupancyOverflowError(
            f"cell occupancy exceeds {_CELL_MAX} (counter width)"
        )
    space.touched.append(occupied)
    return flat, occupied


def count_collisions(beads, space: LatticeSpace) -> CountReport:
    """Count unordered bead pairs sharing the exact same coordinate.

    Each bead is dropped into its cell; a cell ending with k beads holds
    k*(k-1)/2 colliding pairs.  The space is left populated so the caller
    can reset it sparsely.
    """
    arr = as_bead_array(beads)
    if len(arr) == 0:
        return CountReport(count=0, beads_processed=0, cells_touched=0)
    flat, occupied = _place(space, arr)
    occ = space.cells.reshape(-1)[flat].astype(np.int64)
    # sum over beads of (occupancy - 1) counts every colliding pair twice
    count = int((occ - 1).sum()) // 2
    return CountReport(
        count=count, beads_processed=len(arr), cells_touched=len(occupied)
    )


def contact_accumulator(beads, space: LatticeSpace) -> int:
    """The doubled contact sum: place all beads, then for each bead add the
    occupancies of its six axial neighbors.  Every contact is seen from both
    ends, so the result is always even; `count_contacts` halves it.

    Leaves the space populated, like the counters.
    """
    arr = as_bead_array(beads)
    if len(arr) == 0:
        return 0
    _, _ = _place(space, arr)
    flat_cells = space.cells.reshape(-1)
    doubled = 0
    for off in NEIGHBOR_OFFSETS:
        neighbor_flat = space._flatten(arr + off)
        doubled += int(flat_cells[neighbor_flat].sum(dtype=np.int64))
    return doubled


def count_contacts(beads, space: LatticeSpace) -> CountReport:
    """Count unordered bead pairs at unit distance along exactly one axis.

    Multiplicity counts: j beads at p adjacent to k beads at q contribute
    j*k contacts.  Beads sharing a cell are not contacts of each other.
    """
    arr = as_bead_array(beads)
    if len(arr) == 0:
        return CountReport(count=0, beads_processed=0, cells_touched=0)
    doubled = contact_accumulator(arr, space)
    if doubled % 2 != 0:
        raise ArithmeticError(f"doubled contact sum {doubled} is odd")
    # touched accounting includes the six neighbor cells read per bead
    read = np.concatenate([arr] + [arr + off for off in NEIGHBOR_OFFSETS])
    cells_touched = len(np.unique(space._flatten(read)))
    return CountReport(
        count=doubled // 2, beads_processed=len(arr), cells_touched=cells_touched
    )


def reset_sparse(space: LatticeSpace, beads=None) -> None:
    """Zero the space touching only cells the last counted vector occupied.

    Uses the touched list when available; otherwise falls back to zeroing
    each given bead's cell and its six neighbors.  Total writes are at most
    7 per bead.  Idempotent on an already-zero space.
    """
    flat_cells = space.cells.reshape(-1)
    if space.touched:
        for occupied in space.touched:
            flat_cells[occupied] = 0
        space.touched.clear()
        return
    if beads is not None:
        arr = as_bead_array(beads)
        if len(arr) == 0:
            return
        space._validate(arr)
        for off in np.vstack([[[0, 0, 0]], NEIGHBOR_OFFSETS]):
            flat_cells[space._flatten(arr + off)] = 0


def _oracle_array(beads) -> np.ndarray:
    arr = as_bead_array(beads)
    if len(arr) and np.abs(arr).max() < 2**30:  # halve pairwise-diff traffic
        arr = arr.astype(np.int32)
    return arr


def oracle_collisions(beads) -> int:
    """Brute-force O(N^2) collision count: compare every pair i < j.

    The full symmetric comparison matrix is computed axis by axis; the
    diagonal (each bead vs itself) is subtracted and the double counting
    halved."""
    arr = _oracle_array(beads)
    n = len(arr)
    if n < 2:
        return 0
    x, y, z = arr[:, 0], arr[:, 1], arr[:, 2]
    same = x[:, None] == x[None, :]
    same &= y[:, None] == y[None, :]
    same &= z[:, None] == z[None, :]
    return (int(same.sum()) - n) // 2


def oracle_contacts(beads) -> int:
    """Brute-force O(N^2) contact count: pairs whose offset is a unit axial
    step, i.e. Manhattan distance exactly 1."""
    arr = _oracle_array(beads)
    n = len(arr)
    if n < 2:
        return 0
    x, y, z = arr[:, 0], arr[:, 1], arr[:, 2]
    manhattan = np.abs(x[:, None] - x[None, :])
    manhattan += np.abs(y[:, None] - y[None, :])
    manhattan += np.abs(z[:, None] - z[None, :])
    return int((manhattan == 1).sum()) // 2

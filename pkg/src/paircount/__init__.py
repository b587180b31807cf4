"""Counting collisions, contacts, and symmetric pairwise interactions.

Fast lattice-based counters with brute-force oracles, a balanced circular
all-pairs schedule, pluggable interaction engines, and a benchmark CLI
(`paircount`).
"""

from .lattice_counter import (
    CountReport,
    LatticeSpace,
    count_collisions,
    count_contacts,
    new_space,
    oracle_collisions,
    oracle_contacts,
    reset_sparse,
)
from .pair_schedule import (
    first_violation_step,
    pairs,
    pairs_array,
    reach,
    reached,
    steps_for,
)
from .spi_engine import (
    Sphere,
    SpiResult,
    collision_indicator,
    spi_balanced,
    spi_parallel,
    spi_standard,
)

__all__ = [
    "CountReport",
    "LatticeSpace",
    "Sphere",
    "SpiResult",
    "collision_indicator",
    "count_collisions",
    "count_contacts",
    "first_violation_step",
    "new_space",
    "oracle_collisions",
    "oracle_contacts",
    "pairs",
    "pairs_array",
    "reach",
    "reached",
    "reset_sparse",
    "spi_balanced",
    "spi_parallel",
    "spi_standard",
    "steps_for",
]

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paircount.lattice_counter import (
    CoordinateRangeError,
    NEIGHBOR_OFFSETS,
    contact_accumulator,
    count_collisions,
    count_contacts,
    interior_cell_count,
    new_space,
    oracle_collisions,
    oracle_contacts,
    reset_sparse,
)

coord = st.integers(min_value=-8, max_value=8)
bead_lists = st.lists(st.tuples(coord, coord, coord), max_size=64)


def test_new_space_sizes():
    assert new_space(0).interior_cells == 1
    assert new_space(0).cells.size == 27
    assert new_space(1).interior_cells == 27
    assert interior_cell_count(960) == 1921**3


def test_collisions_all_coincident():
    sp = new_space(1)
    assert count_collisions([(0, 0, 0)] * 5, sp).count == 10


def test_collisions_all_distinct():
    sp = new_space(1)
    assert count_collisions([(0, 0, 0), (1, 0, 0), (0, 1, 0)], sp).count == 0


def test_contacts_single_pair():
    sp = new_space(1)
    assert count_contacts([(0, 0, 0), (1, 0, 0)], sp).count == 1


def test_contacts_star():
    beads = [(0, 0, 0)] + [tuple(o) for o in NEIGHBOR_OFFSETS]
    sp = new_space(1)
    assert count_contacts(beads, sp).count == 6


def test_contacts_multiplicity():
    # 2 beads at p, 3 at adjacent q -> 6 contacts
    beads = [(0, 0, 0)] * 2 + [(1, 0, 0)] * 3
    sp = new_space(1)
    assert count_contacts(beads, sp).count == 6
    assert oracle_contacts(beads) == 6


def test_empty_input():
    sp = new_space(1)
    assert count_collisions([], sp).count == 0
    assert count_contacts([], sp).count == 0
    assert oracle_collisions([]) == 0
    assert oracle_contacts([]) == 0


def test_oracle_two_coincident():
    beads = [(0, 0, 0), (0, 0, 0)]
    assert oracle_collisions(beads) == 1
    assert oracle_contacts(beads) == 0


def test_out_of_bounds_names_index():
    sp = new_space(2)
    with pytest.raises(CoordinateRangeError, match="bead 1"):
        count_collisions([(0, 0, 0), (3, 0, 0)], sp)


@given(bead_lists)
@settings(max_examples=200, deadline=None)
def test_collisions_match_oracle(beads):
    sp = new_space(8)
    assert count_collisions(beads, sp).count == oracle_collisions(beads)


@given(bead_lists)
@settings(max_examples=200, deadline=None)
def test_contacts_match_oracle(beads):
    sp = new_space(8)
    assert count_contacts(beads, sp).count == oracle_contacts(beads)


@given(bead_lists, st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(beads, rnd):
    shuffled = list(beads)
    rnd.shuffle(shuffled)
    sp = new_space(8)
    col = count_collisions(beads, sp).count
    reset_sparse(sp, beads)
    assert count_collisions(shuffled, sp).count == col
    reset_sparse(sp, shuffled)
    con = count_contacts(beads, sp).count
    reset_sparse(sp, beads)
    assert count_contacts(shuffled, sp).count == con


@given(bead_lists, st.tuples(coord, coord, coord))
@settings(max_examples=100, deadline=None)
def test_translation_invariance(beads, offset):
    sp = new_space(16)
    col = count_collisions(beads, sp).count
    reset_sparse(sp, beads)
    con = count_contacts(beads, sp).count
    reset_sparse(sp, beads)
    shifted = [(x + offset[0], y + offset[1], z + offset[2]) for x, y, z in beads]
    assert count_collisions(shifted, sp).count == col
    reset_sparse(sp, shifted)
    assert count_contacts(shifted, sp).count == con


@given(bead_lists)
@settings(max_examples=100, deadline=None)
def test_contact_accumulator_parity(beads):
    sp = new_space(8)
    doubled = contact_accumulator(beads, sp)
    assert doubled % 2 == 0
    reset_sparse(sp, beads)
    assert count_contacts(beads, sp).count == doubled // 2


@given(bead_lists, bead_lists)
@settings(max_examples=100, deadline=None)
def test_sparse_reset_soundness(first, second):
    reused = new_space(8)
    count_contacts(first, reused)
    reset_sparse(reused, first)
    fresh = new_space(8)
    assert (
        count_contacts(second, reused).count == count_contacts(second, fresh).count
    )


def test_reset_via_touched_list_write_budget():
    sp = new_space(1)
    count_collisions([(0, 0, 0)] * 5, sp)
    assert sum(len(t) for t in sp.touched) <= 5
    reset_sparse(sp)
    assert sp.is_zero()
    assert not sp.touched


def test_reset_without_touched_list():
    sp = new_space(2)
    count_collisions([(1, 1, 0), (0, 0, 0)], sp)
    sp.touched.clear()  # simulate a space whose bookkeeping was dropped
    reset_sparse(sp, [(1, 1, 0), (0, 0, 0)])
    assert sp.is_zero()


def test_reset_empty_is_noop():
    sp = new_space(1)
    reset_sparse(sp, [])
    assert sp.is_zero()


def test_touch_bounds():
    sp = new_space(8)
    beads = [(i % 3, (i // 3) % 3, 0) for i in range(20)]
    col = count_collisions(beads, sp)
    assert col.cells_touched <= len(beads)
    reset_sparse(sp, beads)
    con = count_contacts(beads, sp)
    assert con.cells_touched <= 7 * len(beads)


def test_padding_stays_zero():
    sp = new_space(1)
    beads = [(1, 1, 1), (-1, -1, -1), (1, -1, 0)]
    count_contacts(beads, sp)
    interior = sp.cells[1:-1, 1:-1, 1:-1].sum()
    assert sp.cells.sum() == interior  # nothing written to padding

import numpy as np
import pytest

from paircount import pair_schedule as ps


def brute_pairs(n):
    return {(i, j) for i in range(n) for j in range(i + 1, n)}


def as_unordered(seq):
    return [(min(i, j), max(i, j)) for i, j in seq]


def test_reach_examples():
    assert ps.reach(5, 1, 1) == 2
    assert ps.reach(5, 4, 1) == 0
    assert ps.reach(7, 3, 3) == 6


def test_reached_examples():
    assert ps.reached(5, 1, 1) == 0
    assert ps.reached(5, 1, 2) == 4
    assert ps.reached(3, 0, 1) == 2


def test_reach_validation():
    with pytest.raises(IndexError):
        ps.reach(5, 5, 1)
    with pytest.raises(ValueError):
        ps.reach(5, 0, 0)
    with pytest.raises(ValueError):
        ps.reached(0, 0, 1)


def test_steps_for_examples():
    assert all(ps.steps_for(5, i) == 2 for i in range(5))
    assert [ps.steps_for(4, i) for i in range(4)] == [2, 2, 1, 1]
    assert ps.steps_for(1, 0) == 0
    with pytest.raises(ValueError):
        ps.steps_for(0, 0)


def test_pairs_small():
    assert as_unordered(ps.pairs(3)) == as_unordered([(0, 1), (1, 2), (2, 0)])
    assert set(as_unordered(ps.pairs(5))) == brute_pairs(5)
    assert len(list(ps.pairs(5))) == 10
    assert set(as_unordered(ps.pairs(4))) == brute_pairs(4)
    assert len(list(ps.pairs(4))) == 6
    assert list(ps.pairs(1)) == []
    assert as_unordered(ps.pairs(2)) == [(0, 1)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 16, 17, 100, 101, 256, 257])
def test_completeness_and_uniqueness(n):
    emitted = as_unordered(ps.pairs(n))
    assert len(emitted) == len(set(emitted)) == ps.total_pairs(n)
    assert set(emitted) == brute_pairs(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 16, 17, 100, 101])
def test_pairs_array_matches_generator(n):
    arr = ps.pairs_array(n)
    assert [tuple(row) for row in arr] == list(ps.pairs(n))


@pytest.mark.parametrize("n", range(1, 200))
def test_balance_and_work(n):
    counts = ps.step_counts(n)
    assert int(counts.sum()) == ps.total_pairs(n)
    if n >= 2:
        spread = int(counts.max() - counts.min())
        assert spread == (0 if n % 2 == 1 else 1)
    assert [ps.steps_for(n, i) for i in range(n)] == counts.tolist()


def test_first_violation_examples():
    assert ps.first_violation_step(5) == 3
    assert ps.first_violation_step(3) == 2
    assert ps.first_violation_step(7) == 4
    with pytest.raises(ValueError):
        ps.first_violation_step(4)
    with pytest.raises(ValueError):
        ps.first_violation_step(1)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 21, 99, 101])
def test_violation_step_introduces_duplicates(n):
    s_viol = ps.first_violation_step(n)
    emitted = as_unordered(ps.pairs(n))
    assert len(set(emitted)) == len(emitted)  # tight: no duplicates before
    extended = emitted + [
        tuple(sorted((i, (i + s_viol) % n))) for i in range(n)
    ]
    assert len(set(extended)) < len(extended)


@pytest.mark.parametrize("n", [3, 5, 7, 11, 25])
def test_reciprocity_split(n):
    # i emits (i,j) iff d = j-i <= (n-1)/2; j emits it iff d >= (n+1)/2
    emitted_by = {}
    for i, j in ps.pairs(n):
        emitted_by[(min(i, j), max(i, j))] = i
    for i in range(n):
        for j in range(i + 1, n):
            d = j - i
            expect = i if d <= (n - 1) // 2 else j
            assert emitted_by[(i, j)] == expect

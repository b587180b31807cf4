"""Balanced circular enumeration of all unordered index pairs.

Every index i walks forward around the ring of N indices, pairing with
(i + s) mod N for steps s = 1, 2, ...  Stopping at s = (N-1)/2 (odd N)
visits every unordered pair exactly once, and every index does the same
amount of work.  For even N the ring must stop one step earlier and the
first half of the indices pick up the leftover step s = N/2, leaving the
load spread at most one step wide.

All functions are pure; the heavy consumers use the vectorized
`pairs_array` / `step_counts` forms.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one index, got n={n}")


def _check_index(n: int, i: int) -> None:
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for n={n}")


def reach(n: int, i: int, s: int) -> int:
    """Index of the partner that i evaluates at step s: (i + s) mod n."""
    _check_n(n)
    _check_index(n, i)
    if s < 1:
        raise ValueError(f"steps start at 1, got s={s}")
    return (i + s) % n


def reached(n: int, i: int, s: int) -> int:
    """Index of the partner evaluating i at step s: (i - s) mod n."""
    _check_n(n)
    _check_index(n, i)
    if s < 1:
        raise ValueError(f"steps start at 1, got s={s}")
    return (i - s) % n


def steps_for(n: int, i: int) -> int:
    """Number of inner steps index i executes.

    Odd n: (n-1)/2 for everyone.  Even n: n/2 - 1 everywhere, plus the
    extra step s = n/2 for the first half (i < n/2).
    """
    _check_n(n)
    _check_index(n, i)
    if n % 2 == 1:
        return (n - 1) // 2
    return n // 2 if i < n // 2 else n // 2 - 1


def step_counts(n: int) -> np.ndarray:
    """Vectorized steps_for over all indices 0..n-1."""
    _check_n(n)
    if n % 2 == 1:
        return np.full(n, (n - 1) // 2, dtype=np.int64)
    counts = np.full(n, n // 2 - 1, dtype=np.int64)
    counts[: n // 2] += 1
    return counts


def total_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """Yield the schedule's oriented pairs (i, (i+s) mod n).

    Viewed as unordered pairs this covers every {i, j} with i != j exactly
    once, n(n-1)/2 pairs in total.
    """
    _check_n(n)
    for i in range(n):
        for s in range(1, steps_for(n, i) + 1):
            yield i, (i + s) % n


def _block(i_lo: int, i_hi: int, steps: int, n: int) -> np.ndarray:
    """Oriented pairs for indices [i_lo, i_hi), each running `steps` steps,
    as a (2, count*steps) array: row 0 the outer index, row 1 its partner."""
    i = np.arange(i_lo, i_hi, dtype=np.int32)
    s = np.arange(1, steps + 1, dtype=np.int32)
    out = np.empty((2, (i_hi - i_lo) * steps), dtype=np.int32)
    out[0] = np.repeat(i, steps)
    j = out[1].reshape(i_hi - i_lo, steps)
    np.add(i[:, None], s[None, :], out=j)
    j[j >= n] -= n  # i + s < 2n, so one subtraction replaces the modulo
    return out


def pairs_array(n: int) -> np.ndarray:
    """All oriented pairs as an (n(n-1)/2, 2) int32 array, schedule order.

    Column-major layout: p[:, 0] and p[:, 1] are each contiguous.
    """
    _check_n(n)
    if n < 2:
        return np.empty((0, 2), dtype=np.int32)
    if n % 2 == 1:
        return _block(0, n, (n - 1) // 2, n).T
    # even n: first half runs the extra step s = n/2
    return np.concatenate(
        [_block(0, n // 2, n // 2, n), _block(n // 2, n, n // 2 - 1, n)], axis=1
    ).T


def first_violation_step(n: int) -> int:
    """First step at which continuing the odd-n schedule would re-evaluate a
    pair: the step where reach(s) - 1 wraps onto reached(s), i.e. (n+1)/2.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"defined for odd n >= 3, got n={n}")
    return (n + 1) // 2

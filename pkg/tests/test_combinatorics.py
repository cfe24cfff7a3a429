from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from symdual.combinatorics import compositions, distinct_permutations, fubini, multinomial, weak_compositions


@given(st.integers(0, 6), st.integers(0, 4))
def test_weak_compositions_brute_force(total, parts):
    got = list(weak_compositions(total, parts))
    expected = sorted(c for c in itertools.product(range(total + 1), repeat=parts) if sum(c) == total)
    assert got == expected


@given(st.integers(-2, 6), st.integers(0, 4))
def test_compositions_are_positive(total, parts):
    got = list(compositions(total, parts))
    assert got == [c for c in weak_compositions(total, parts) if all(c)]


@settings(deadline=None)
@given(st.lists(st.integers(0, 2), max_size=4))
def test_distinct_permutations_count(counts):
    word = [i for i, c in enumerate(counts) for _ in range(c)]
    got = list(distinct_permutations(counts))
    assert got == sorted(set(itertools.permutations(word)))
    assert len(got) == multinomial(counts)


def test_fubini_values():
    assert [fubini(m) for m in range(7)] == [1, 1, 3, 13, 75, 541, 4683]

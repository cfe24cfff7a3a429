"""Counting helpers shared by the enumerators."""

from __future__ import annotations

from itertools import combinations
from math import factorial, prod
from typing import Iterator, Sequence


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``parts``-tuples of nonnegative integers summing to ``total``, lexicographically."""
    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    # stars and bars; bar positions in lex order give compositions in lex order
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Like :func:`weak_compositions` but every part is positive."""
    for c in weak_compositions(total - parts, parts):
        yield tuple(x + 1 for x in c)


def multinomial(counts: Sequence[int]) -> int:
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)


def distinct_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of the multiset with ``counts[i]`` copies of ``i``, lexicographically."""
    counts = list(counts)
    n = sum(counts)
    word: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(word) == n:
            yield tuple(word)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                word.append(i)
                yield from rec()
                word.pop()
                counts[i] += 1

    yield from rec()


def fubini(m: int) -> int:
    """Number of ordered set partitions of an m-element set."""
    # a(m) = sum_k C(m,k) a(m-k)
    a = [1]
    for j in range(1, m + 1):
        a.append(sum(factorial(j) // (factorial(k) * factorial(j - k)) * a[j - k] for k in range(1, j + 1)))
    return a[m]

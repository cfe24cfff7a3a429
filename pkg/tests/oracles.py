"""Brute-force reference implementations used as test oracles."""

from __future__ import annotations

import itertools

from symdual.expansion import IndexSet, nodes_of
from symdual.graph import OrientedGraph
from symdual.stability import StratumIndex, is_stable, tuple_counts


def brute_strata(g: OrientedGraph, I: IndexSet) -> list[StratumIndex]:
    """Every (b, s) with entries in 0..n that passes the stability test."""
    n, r = I.n, I.r
    out = []
    for b in itertools.product(range(n + 1), repeat=len(g.vertices)):
        for s in itertools.product(range(n + 1), repeat=len(g.arrows) * (r - 1)):
            if sum(b) + sum(s) != n:  # cheap necessary condition, checked before building
                continue
            idx = StratumIndex(
                dict(zip(g.vertices, b)),
                {a: s[j * (r - 1) : (j + 1) * (r - 1)] for j, a in enumerate(g.arrow_labels)},
            )
            if is_stable(g, I, idx):
                out.append(idx)
    return out


def brute_tuples(g: OrientedGraph, I: IndexSet) -> set[tuple]:
    """Every n-tuple of expanded-graph nodes whose occurrence counts are stable."""
    nodes = list(nodes_of(g, I))
    return {z for z in itertools.product(nodes, repeat=I.n) if is_stable(g, I, tuple_counts(g, I, z))}

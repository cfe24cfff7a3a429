"""GIT stability data: support vectors, stable strata and tuples, and their facet maps.

A stratum over ``U_I`` is labelled by a pair ``(b, s)``: ``b[v]`` points on the
component of vertex ``v`` and ``s[γ][l-1]`` points on the ``l``-th inserted
component along arrow ``γ``.  It is stable when its numerical support equals the
combinatorial support of ``I``.

Facet indices ``k`` are 1-based, matching the position of the dropped member of
``J``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .combinatorics import distinct_permutations, weak_compositions
from .expansion import BlackNode, IndexSet, Node, WhiteNode, nodes_of
from .graph import OrientedGraph, bipartite_partition


class StabilityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StratumIndex:
    b: Mapping[str, int]
    s: Mapping[str, tuple[int, ...]]

    def __post_init__(self) -> None:
        b = dict(self.b)
        s = {k: tuple(v) for k, v in self.s.items()}
        object.__setattr__(self, "b", MappingProxyType(b))
        object.__setattr__(self, "s", MappingProxyType(s))
        # shape facts reused by every validation of this index
        object.__setattr__(self, "_lengths", {len(t) for t in s.values()})
        object.__setattr__(self, "_nonneg", min(itertools.chain(b.values(), *s.values()), default=0) >= 0)

    @classmethod
    def _trusted(cls, b: dict[str, int], s: dict[str, tuple[int, ...]], stages: int) -> StratumIndex:
        # fast path for indices built here: nonnegative, with tuples of length ``stages``
        self = object.__new__(cls)
        object.__setattr__(self, "b", MappingProxyType(b))
        object.__setattr__(self, "s", MappingProxyType(s))
        object.__setattr__(self, "_lengths", {stages} if s else set())
        object.__setattr__(self, "_nonneg", True)
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StratumIndex):
            return NotImplemented
        return self.b == other.b and self.s == other.s

    def __hash__(self) -> int:
        return hash((frozenset(self.b.items()), frozenset(self.s.items())))

    def __repr__(self) -> str:
        return f"StratumIndex(b={dict(self.b)}, s={dict(self.s)})"

    @property
    def stages(self) -> int:
        """Common length of the ``s`` tuples (``r - 1``)."""
        lengths = set(self._lengths)
        if len(lengths) > 1:
            raise StabilityError(f"ragged stage tuples: lengths {sorted(lengths)}")
        return lengths.pop() if lengths else 0

    def total(self) -> int:
        return sum(self.b.values()) + sum(sum(t) for t in self.s.values())

    def sort_key(self, g: OrientedGraph) -> tuple[int, ...]:
        # b over vertex order, then s stage-major over arrow order
        st = self.stages
        return tuple(self.b.get(v, 0) for v in g.vertices) + tuple(
            self.s[a][l] for l in range(st) for a in g.arrow_labels
        )

    def to_json(self) -> dict:
        return {"b": dict(self.b), "s": {k: list(v) for k, v in self.s.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> StratumIndex:
        return cls(data["b"], data["s"])


@lru_cache(maxsize=4096)
def combinatorial_support(I: IndexSet) -> tuple[int, ...]:
    a = (1,) + I.members + (I.n + 1,)
    return tuple(a[i] - a[i - 1] for i in range(1, len(a)))


def numerical_support(g: OrientedGraph, idx: StratumIndex, stages: int | None = None) -> tuple[int, ...]:
    """``(sum of b over sources, per-stage sums of s, sum of b over sinks)``."""
    part = bipartite_partition(g)
    if stages is None:
        stages = idx.stages
    plus = sum(idx.b.get(v, 0) for v in part.sources)
    minus = sum(idx.b.get(v, 0) for v in part.sinks)
    rows = [idx.s[a] for a in g.arrow_labels]
    middle = tuple(map(sum, zip(*rows))) if rows else (0,) * stages
    if len(middle) != stages:
        raise StabilityError(f"stage tuples must have length {stages}")
    return (plus,) + middle + (minus,)


def is_stable(g: OrientedGraph, I: IndexSet, idx: StratumIndex) -> bool:
    _check_shape(g, idx, I.r - 1)
    return numerical_support(g, idx, I.r - 1) == combinatorial_support(I)


def _check_shape(g: OrientedGraph, idx: StratumIndex, stages: int) -> None:
    if idx.b.keys() != g.vertex_set or idx.s.keys() != g.label_set:
        raise StabilityError("stratum index must assign a value to every vertex and arrow")
    if not idx._lengths <= {stages}:
        raise StabilityError(f"stage tuples must have length {stages} (|I| - 1)")
    if not idx._nonneg:
        raise StabilityError("stratum entries must be nonnegative")


def enumerate_strata(g: OrientedGraph, I: IndexSet) -> list[StratumIndex]:
    """All pairs ``(b, s)`` stable with respect to ``I``, in lexicographic order."""
    part = bipartite_partition(g)
    support = combinatorial_support(I)
    sources = [v for v in g.vertices if v in part.sources]
    sinks = [v for v in g.vertices if v in part.sinks]
    arrows = g.arrow_labels
    factors = [
        list(weak_compositions(support[0], len(sources))),
        list(weak_compositions(support[-1], len(sinks))),
    ] + [list(weak_compositions(c, len(arrows))) for c in support[1:-1]]

    out = []
    for bp, bm, *stage_vals in itertools.product(*factors):
        b = dict(zip(sources, bp)) | dict(zip(sinks, bm))
        b = {v: b[v] for v in g.vertices}
        s = {a: tuple(stage[j] for stage in stage_vals) for j, a in enumerate(arrows)}
        out.append(StratumIndex._trusted(b, s, len(stage_vals)))
    out.sort(key=lambda x: x.sort_key(g))
    return out


def stratum_facet(
    g: OrientedGraph, J: IndexSet, idx: StratumIndex, k: int
) -> tuple[IndexSet, StratumIndex]:
    """Index of the unique stratum over ``U_{J minus j_k}`` whose closure contains ``idx``."""
    r = J.r - 1
    if J.r < 2:
        raise StabilityError(f"J={J} has no proper nonempty subsets")
    if not 1 <= k <= r + 1:
        raise StabilityError(f"facet index k={k} out of range 1..{r + 1}")
    if not is_stable(g, J, idx):
        raise StabilityError(f"{idx!r} is not stable with respect to J={J}")

    b = dict(idx.b)
    s = dict(idx.s)
    if k == 1:
        for a in g.arrow_labels:
            b[g.src(a)] += s[a][0]
        s = {a: t[1:] for a, t in s.items()}
    elif k == r + 1:
        for a in g.arrow_labels:
            b[g.tgt(a)] += s[a][r - 1]
        s = {a: t[:-1] for a, t in s.items()}
    else:
        s = {a: t[: k - 2] + (t[k - 2] + t[k - 1],) + t[k:] for a, t in s.items()}
    return J.without(k), StratumIndex._trusted(b, s, r - 1)


# -- tuples ------------------------------------------------------------------

def tuple_counts(g: OrientedGraph, I: IndexSet, z: Sequence[Node]) -> StratumIndex:
    """Occurrence counts of the nodes of ``z`` as a stratum index."""
    r = I.r
    b = dict.fromkeys(g.vertices, 0)
    s = {a: [0] * (r - 1) for a in g.arrow_labels}
    try:
        for x in z:
            if type(x) is BlackNode:
                b[x.vertex] += 1
            elif 1 <= x.position < r:
                s[x.arrow][x.position - 1] += 1
            else:
                raise KeyError
    except (KeyError, AttributeError):
        raise StabilityError(f"{x!r} is not a node of the expansion for I={I}") from None
    return StratumIndex._trusted(b, {a: tuple(t) for a, t in s.items()}, r - 1)


def enumerate_tuples(g: OrientedGraph, I: IndexSet) -> list[tuple[Node, ...]]:
    """All stable n-tuples of nodes of the expanded graph, in lexicographic node order."""
    nodes = list(nodes_of(g, I))
    out = []
    for idx in enumerate_strata(g, I):
        counts = [idx.b[x.vertex] if isinstance(x, BlackNode) else idx.s[x.arrow][x.position - 1] for x in nodes]
        out.extend(distinct_permutations(counts))
    out.sort()
    return [tuple(nodes[i] for i in word) for word in out]


def tuple_facet(g: OrientedGraph, J: IndexSet, z: Sequence[Node], k: int) -> tuple[IndexSet, tuple[Node, ...]]:
    """Entrywise relabelling of a stable tuple when the ``k``-th member of ``J`` is dropped."""
    r = J.r - 1
    if J.r < 2:
        raise StabilityError(f"J={J} has no proper nonempty subsets")
    if not 1 <= k <= r + 1:
        raise StabilityError(f"facet index k={k} out of range 1..{r + 1}")
    if len(z) != J.n or not is_stable(g, J, tuple_counts(g, J, z)):
        raise StabilityError(f"tuple is not stable with respect to J={J}")

    def move(x: Node) -> Node:
        if isinstance(x, BlackNode):
            return x
        l = x.position
        if k == 1:
            return BlackNode(g.src(x.arrow)) if l == 1 else WhiteNode(x.arrow, l - 1)
        if k == r + 1:
            return BlackNode(g.tgt(x.arrow)) if l == r else x
        return x if l < k else WhiteNode(x.arrow, l - 1)

    return J.without(k), tuple(move(x) for x in z)


def tuple_to_json(I: IndexSet, z: Sequence[Node]) -> list[str]:
    return [x.name(I) for x in z]

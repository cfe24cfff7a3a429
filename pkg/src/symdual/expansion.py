"""Expanded graphs: every arrow subdivided into one arrow per member of an index set."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Union

from .graph import Arrow, OrientedGraph


@dataclass(frozen=True, order=True)
class IndexSet:
    """A nonempty subset of ``[n+1] = {1, ..., n+1}``, kept sorted."""

    n: int
    members: tuple[int, ...]
    r: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        members = tuple(sorted(self.members))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "r", len(members))
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not members:
            raise ValueError("index set must be nonempty")
        if len(set(members)) != len(members):
            raise ValueError(f"repeated members in {members}")
        if members[0] < 1 or members[-1] > self.n + 1:
            raise ValueError(f"{set(members)} is not a subset of [{self.n + 1}]")

    @classmethod
    def parse(cls, n: int, text: str) -> IndexSet:
        """Parse a comma list such as ``"1,3"``."""
        try:
            members = tuple(int(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise ValueError(f"bad index set {text!r}") from None
        return cls(n, members)

    def without(self, k: int) -> IndexSet:
        """Drop the k-th member (1-based)."""
        return _without(self, k)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@lru_cache(maxsize=8192)
def _without(I: IndexSet, k: int) -> IndexSet:
    return IndexSet(I.n, I.members[: k - 1] + I.members[k:])


def all_index_sets(n: int) -> list[IndexSet]:
    """Every nonempty subset of ``[n+1]``, by size then lexicographically."""
    return [IndexSet(n, c) for r in range(1, n + 2) for c in combinations(range(1, n + 2), r)]


@dataclass(frozen=True, order=True)
class BlackNode:
    vertex: str

    def name(self, I: IndexSet) -> str:
        return f"{self.vertex}@{I}"


@dataclass(frozen=True, order=True)
class WhiteNode:
    """The inserted node on ``arrow`` after its ``position``-th stage (1 <= position < r)."""

    arrow: str
    position: int

    def name(self, I: IndexSet) -> str:
        return f"({I}|{self.arrow}|{I.members[self.position - 1]})"


Node = Union[BlackNode, WhiteNode]


@dataclass(frozen=True)
class ExpandedArrow:
    arrow: str
    position: int
    src: Node
    tgt: Node

    def stage(self, I: IndexSet) -> int:
        """The member of ``I`` labelling this arrow."""
        return I.members[self.position - 1]


@dataclass(frozen=True)
class ExpandedGraph:
    index_set: IndexSet
    black_nodes: tuple[BlackNode, ...]
    white_nodes: tuple[WhiteNode, ...]
    arrows: tuple[ExpandedArrow, ...]

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self.black_nodes + self.white_nodes

    def node_name(self, node: Node) -> str:
        return node.name(self.index_set)

    def to_graph(self) -> OrientedGraph:
        """Plain graph with nodes ``v@I`` / ``(I|γ|i)`` and arrow labels ``γ#i``."""
        I = self.index_set
        return OrientedGraph(
            tuple(self.node_name(x) for x in self.nodes),
            tuple(
                Arrow(f"{a.arrow}#{a.stage(I)}", self.node_name(a.src), self.node_name(a.tgt))
                for a in self.arrows
            ),
        )

    def to_text(self) -> str:
        return self.to_graph().to_text()


def chain_node(g: OrientedGraph, I: IndexSet, arrow: str, position: int) -> Node:
    """Node number ``position`` (0..r) along the subdivided ``arrow``.

    Position 0 is the black source node and position r the black target node.
    """
    if position == 0:
        return BlackNode(g.src(arrow))
    if position == I.r:
        return BlackNode(g.tgt(arrow))
    return WhiteNode(arrow, position)


def expand(g: OrientedGraph, I: IndexSet) -> ExpandedGraph:
    r = I.r
    black = tuple(BlackNode(v) for v in g.vertices)
    white = tuple(WhiteNode(a.label, l) for a in g.arrows for l in range(1, r))
    arrows = tuple(
        ExpandedArrow(a.label, l, chain_node(g, I, a.label, l - 1), chain_node(g, I, a.label, l))
        for a in g.arrows
        for l in range(1, r + 1)
    )
    return ExpandedGraph(I, black, white, arrows)


def nodes_of(g: OrientedGraph, I: IndexSet) -> Iterable[Node]:
    yield from (BlackNode(v) for v in g.vertices)
    yield from (WhiteNode(a.label, l) for a in g.arrows for l in range(1, I.r))

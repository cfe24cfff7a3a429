"""Oriented dual graphs: representation, the text file format, structural queries.

A graph file lists one item per line::

    # the dual graph of a two-component degeneration
    v
    w
    v -> w : g

A bare token declares a vertex, ``SRC -> TGT : LABEL`` declares an arrow (the
label is optional and defaults to ``e<k>`` for the k-th arrow).  ``#`` starts a
comment when it begins a token, so labels such as ``g#2`` survive a round trip.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph data.  ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class GraphSyntaxError(GraphError):
    pass


class LoopError(GraphError):
    pass


class DuplicateLabelError(GraphError):
    pass


class OrientationError(GraphError):
    """The given orientation is not bipartite; ``vertex`` has both in- and out-arrows."""

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} is both a source and a target")


@dataclass(frozen=True)
class Arrow:
    label: str
    src: str
    tgt: str


@dataclass(frozen=True)
class VertexPartition:
    sources: frozenset[str]
    sinks: frozenset[str]


@dataclass(frozen=True)
class OrientedGraph:
    """A finite loop-free directed multigraph with labelled vertices and arrows.

    Vertex and arrow labels share one namespace and must be unique.  Parallel
    arrows (in either direction) are allowed.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _arrow_by_label: dict[str, Arrow] = field(init=False, repr=False, compare=False)
    _out: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)
    _in: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)
    _labels: tuple[str, ...] = field(init=False, repr=False, compare=False)
    vertex_set: frozenset[str] = field(init=False, repr=False, compare=False)
    label_set: frozenset[str] = field(init=False, repr=False, compare=False)
    _partition: VertexPartition | str | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateLabelError(f"duplicate label {v!r}")
            seen.add(v)
        vertex_set = set(self.vertices)
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            if a.label in seen:
                raise DuplicateLabelError(f"duplicate label {a.label!r}")
            seen.add(a.label)
            for end in (a.src, a.tgt):
                if end not in vertex_set:
                    raise GraphError(f"arrow {a.label!r} references undeclared vertex {end!r}")
            if a.src == a.tgt:
                raise LoopError(f"arrow {a.label!r} is a loop at {a.src!r}")
            out[a.src].append(a.label)
            inc[a.tgt].append(a.label)
        object.__setattr__(self, "_arrow_by_label", {a.label: a for a in self.arrows})
        object.__setattr__(self, "_labels", tuple(a.label for a in self.arrows))
        object.__setattr__(self, "vertex_set", frozenset(self.vertices))
        object.__setattr__(self, "label_set", frozenset(self._labels))
        object.__setattr__(self, "_out", {v: tuple(ls) for v, ls in out.items()})
        object.__setattr__(self, "_in", {v: tuple(ls) for v, ls in inc.items()})

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple]) -> OrientedGraph:
        """Build from ``(src, tgt)`` or ``(src, tgt, label)`` tuples."""
        arrows = []
        for k, e in enumerate(edges, start=1):
            src, tgt, *rest = e
            arrows.append(Arrow(rest[0] if rest else f"e{k}", src, tgt))
        return cls(tuple(vertices), tuple(arrows))

    @property
    def arrow_labels(self) -> tuple[str, ...]:
        return self._labels

    def arrow(self, label: str) -> Arrow:
        return self._arrow_by_label[label]

    def src(self, label: str) -> str:
        return self._arrow_by_label[label].src

    def tgt(self, label: str) -> str:
        return self._arrow_by_label[label].tgt

    def outgoing(self, v: str) -> tuple[str, ...]:
        """Arrows directed away from ``v`` (the set written E(v)^-)."""
        return self._out[v]

    def incoming(self, v: str) -> tuple[str, ...]:
        """Arrows directed towards ``v`` (the set written E(v)^+)."""
        return self._in[v]

    def degree(self, v: str) -> int:
        return len(self._out[v]) + len(self._in[v])

    def reversed(self) -> OrientedGraph:
        return OrientedGraph(self.vertices, tuple(Arrow(a.label, a.tgt, a.src) for a in self.arrows))

    def induced(self, keep: Iterable[str]) -> OrientedGraph:
        """Full subgraph on ``keep``, preserving file order."""
        keep = set(keep)
        return OrientedGraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.src in keep and a.tgt in keep),
        )

    def to_text(self) -> str:
        lines = list(self.vertices)
        lines += [f"{a.src} -> {a.tgt} : {a.label}" for a in self.arrows]
        return "\n".join(lines) + "\n"


# -- parsing -----------------------------------------------------------------

_NAME, _ARROW, _COLON = "name", "->", ":"


def _tokenize(line: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
        elif ch == "#":
            break
        elif line.startswith("->", i):
            tokens.append((_ARROW, "->", i + 1))
            i += 2
        elif ch == ":":
            tokens.append((_COLON, ":", i + 1))
            i += 1
        else:
            start = i
            while i < n and not line[i].isspace() and line[i] != ":" and not line.startswith("->", i):
                i += 1
            tokens.append((_NAME, line[start:i], start + 1))
    return tokens


def parse_graph(text: str) -> OrientedGraph:
    """Parse the graph file format into an :class:`OrientedGraph`.

    Raises :class:`GraphSyntaxError`, :class:`LoopError` or
    :class:`DuplicateLabelError`, each carrying the offending line and column.
    """
    vertices: list[str] = []
    arrows: list[Arrow] = []
    labels: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        kinds = [t[0] for t in tokens]
        end_col = len(raw.rstrip()) + 1

        def fail(pos: int, msg: str) -> GraphSyntaxError:
            col = tokens[pos][2] if pos < len(tokens) else end_col
            return GraphSyntaxError(msg, lineno, col)

        if kinds == [_NAME]:
            name, col = tokens[0][1], tokens[0][2]
            if name in labels:
                raise DuplicateLabelError(f"duplicate label {name!r}", lineno, col)
            labels.add(name)
            vertices.append(name)
            continue

        if kinds[0] != _NAME:
            raise fail(0, "expected a vertex name")
        if len(kinds) < 2 or kinds[1] != _ARROW:
            raise fail(1, "expected '->' or end of line")
        if len(kinds) < 3 or kinds[2] != _NAME:
            raise fail(2, "expected a target vertex after '->'")
        if len(kinds) == 3:
            label, label_col = f"e{len(arrows) + 1}", tokens[0][2]
        else:
            if kinds[3] != _COLON:
                raise fail(3, "expected ':' or end of line")
            if len(kinds) < 5 or kinds[4] != _NAME:
                raise fail(4, "expected an arrow label after ':'")
            if len(kinds) > 5:
                raise fail(5, "unexpected token after arrow label")
            label, label_col = tokens[4][1], tokens[4][2]

        (_, src, src_col), (_, tgt, tgt_col) = tokens[0], tokens[2]
        declared = set(vertices)
        for name, col in ((src, src_col), (tgt, tgt_col)):
            if name not in declared:
                raise GraphSyntaxError(f"vertex {name!r} is not declared", lineno, col)
        if src == tgt:
            raise LoopError(f"arrow {label!r} is a loop at {src!r}", lineno, tokens[0][2])
        if label in labels:
            raise DuplicateLabelError(f"duplicate label {label!r}", lineno, label_col)
        labels.add(label)
        arrows.append(Arrow(label, src, tgt))

    return OrientedGraph(tuple(vertices), tuple(arrows))


# -- structure ---------------------------------------------------------------

def _neighbours(g: OrientedGraph, v: str) -> Iterator[str]:
    for a in g.outgoing(v):
        yield g.tgt(a)
    for a in g.incoming(v):
        yield g.src(a)


def components(g: OrientedGraph) -> list[list[str]]:
    """Connected components of the underlying undirected graph, in file order."""
    seen: set[str] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp, queue = [], deque([root])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in _neighbours(g, v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        comps.append(comp)
    return comps


def has_odd_cycle(g: OrientedGraph) -> bool:
    colour: dict[str, int] = {}
    for root in g.vertices:
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in _neighbours(g, v):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return True
    return False


def bipartite_partition(g: OrientedGraph) -> VertexPartition:
    """Split the vertices into pure sources and pure sinks.

    Isolated vertices are placed among the sources.  Raises
    :class:`OrientationError` naming the first vertex (in file order) that has
    both incoming and outgoing arrows.
    """
    # cached on the (immutable) graph: a partition, or the offending vertex
    cached = g._partition
    if cached is None:
        sources, sinks = [], []
        for v in g.vertices:
            if g.outgoing(v) and g.incoming(v):
                cached = v
                break
            (sinks if g.incoming(v) else sources).append(v)
        else:
            cached = VertexPartition(frozenset(sources), frozenset(sinks))
        object.__setattr__(g, "_partition", cached)
    if isinstance(cached, str):
        raise OrientationError(cached)
    return cached


def is_bipartitely_oriented(g: OrientedGraph) -> bool:
    return all(not (g.outgoing(v) and g.incoming(v)) for v in g.vertices)


def has_directed_cycle(g: OrientedGraph) -> bool:
    # Kahn's algorithm: a cycle survives as vertices that never reach in-degree 0
    indeg = {v: len(g.incoming(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    removed = 0
    while queue:
        v = queue.popleft()
        removed += 1
        for a in g.outgoing(v):
            t = g.tgt(a)
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    return removed < len(g.vertices)


def is_tree(g: OrientedGraph) -> bool:
    return bool(g.vertices) and len(components(g)) == 1 and len(g.arrows) == len(g.vertices) - 1

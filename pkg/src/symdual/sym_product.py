"""Products and symmetric products of oriented graphs as Delta-complexes.

Two independent routes to ``Sym^n(Γ)``:

* :func:`product_complex` builds ``Γ^n`` from cubes subdivided by shuffles, and
  :func:`quotient_sym` divides it by the symmetric group permuting factors;
* :func:`sym_complex` writes down the cells ``(a, r)`` and their faces directly.

:func:`compare` checks that the orbit labelling identifies the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, factorial
from types import MappingProxyType
from typing import Mapping

from .combinatorics import compositions, weak_compositions
from .delta_complex import CellAction, DeltaComplex, f_vector, quotient, relabel
from .graph import OrientedGraph, is_tree
from .stability import StratumIndex

DEFAULT_MAX_TOP_CELLS = 10**7


class ComplexTooLargeError(RuntimeError):
    pass


# -- cells of the symmetric product ----------------------------------------------

@dataclass(frozen=True)
class SymCell:
    """A cell ``(a, r)``: ``a[v]`` points at vertex ``v``, ``r[γ][j]`` points on
    arrow ``γ`` in stage ``j + 1``.  Zero entries are not stored, so a cell of a
    subgraph equals the same cell seen in the whole graph.
    """

    a: Mapping[str, int]
    r: Mapping[str, tuple[int, ...]]
    dim: int

    _key: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = {v: int(x) for v, x in self.a.items() if x}
        r = {g: tuple(t) for g, t in self.r.items() if any(t)}
        if any(len(t) != self.dim for t in r.values()):
            raise ValueError(f"stage tuples of a {self.dim}-cell must have length {self.dim}")
        key = (self.dim, tuple(sorted(a.items())), tuple(sorted(r.items())))
        object.__setattr__(self, "a", MappingProxyType(a))
        object.__setattr__(self, "r", MappingProxyType(r))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    @classmethod
    def _trusted(cls, a: dict[str, int], r: dict[str, tuple[int, ...]], dim: int) -> SymCell:
        # a and r already free of zero entries
        c = object.__new__(cls)
        key = (dim, tuple(sorted(a.items())), tuple(sorted(r.items())))
        for name, value in (("a", MappingProxyType(a)), ("r", MappingProxyType(r)), ("dim", dim), ("_key", key)):
            object.__setattr__(c, name, value)
        object.__setattr__(c, "_hash", hash(key))
        return c

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymCell):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        parts = [(v, f"{v}:{x}") for v, x in self.a.items()]
        parts += [(g, f"{g}:({','.join(map(str, t))})") for g, t in self.r.items()]
        return "[" + " ".join(p for _, p in sorted(parts)) + "]"

    def __repr__(self) -> str:
        return f"SymCell{self}"

    def stages(self, arrow: str) -> tuple[int, ...]:
        return self.r.get(arrow, (0,) * self.dim)

    def total(self) -> int:
        return sum(self.a.values()) + sum(sum(t) for t in self.r.values())

    @classmethod
    def from_stratum(cls, idx: StratumIndex) -> SymCell:
        return cls(idx.b, idx.s, idx.stages)

    def to_stratum(self, g: OrientedGraph) -> StratumIndex:
        return StratumIndex(
            {v: self.a.get(v, 0) for v in g.vertices},
            {a: self.stages(a) for a in g.arrow_labels},
        )


def is_valid_sym_cell(g: OrientedGraph, n: int, c: SymCell) -> bool:
    if not set(c.a) <= set(g.vertices) or not set(c.r) <= set(g.arrow_labels):
        return False
    stage_sums = [sum(c.stages(a)[j] for a in g.arrow_labels) for j in range(c.dim)]
    return c.total() == n and all(s > 0 for s in stage_sums)


def sym_cells(g: OrientedGraph, n: int, k: int) -> list[SymCell]:
    """All ``k``-cells of ``Sym^n(g)``, ordered by (a over vertices, r stage-major)."""
    if n == 0:
        return [SymCell({}, {}, 0)] if k == 0 else []
    arrows = g.arrow_labels
    if k and not arrows:
        return []
    out = []
    for m in range(k, n + 1):
        a_choices = list(weak_compositions(n - m, len(g.vertices)))
        for sums in compositions(m, k):
            per_stage = [list(weak_compositions(t, len(arrows))) for t in sums]
            for stage_vals in itertools.product(*per_stage):
                r = {arrows[e]: tuple(st[e] for st in stage_vals) for e in range(len(arrows))}
                r = {γ: t for γ, t in r.items() if any(t)}
                flat = tuple(x for st in stage_vals for x in st)
                for a in a_choices:
                    cell = SymCell._trusted({v: x for v, x in zip(g.vertices, a) if x}, dict(r), k)
                    out.append((a + flat, cell))
    out.sort(key=lambda t: t[0])
    return [c for _, c in out]


def sym_face(g: OrientedGraph, n: int, c: SymCell, i: int) -> SymCell:
    """Facet ``d_i`` of a ``k``-cell.

    ``d_0`` moves the first stage onto arrow sources, ``d_k`` moves the last
    stage onto arrow targets, and ``d_i`` for ``0 < i < k`` merges stages ``i``
    and ``i + 1``.
    """
    k = c.dim
    if k < 1:
        raise ValueError("vertices have no faces")
    if not 0 <= i <= k:
        raise ValueError(f"face index {i} out of range 0..{k}")
    a = dict(c.a)
    if i == 0:
        for γ, t in c.r.items():
            if t[0]:
                a[g.src(γ)] = a.get(g.src(γ), 0) + t[0]
        r = {γ: t[1:] for γ, t in c.r.items()}
    elif i == k:
        for γ, t in c.r.items():
            if t[-1]:
                a[g.tgt(γ)] = a.get(g.tgt(γ), 0) + t[-1]
        r = {γ: t[:-1] for γ, t in c.r.items()}
    else:
        r = {γ: t[: i - 1] + (t[i - 1] + t[i],) + t[i + 1 :] for γ, t in c.r.items()}
    return SymCell._trusted(a, {γ: t for γ, t in r.items() if any(t)}, k - 1)


def _guard(predicted: int, limit: int | None, what: str) -> None:
    if limit is not None and predicted > limit:
        raise ComplexTooLargeError(
            f"{what} would have {predicted} top-dimensional cells, above the limit of {limit}"
        )


def sym_top_cells(g: OrientedGraph, n: int) -> int:
    if n == 0:
        return 1
    if g.arrows:
        return len(g.arrows) ** n
    return comb(len(g.vertices) + n - 1, n)


def sym_complex(g: OrientedGraph, n: int, max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS) -> DeltaComplex:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _guard(sym_top_cells(g, n), max_top_cells, f"Sym^{n}")
    top = n if g.arrows else 0
    cells = [sym_cells(g, n, k) for k in range(top + 1)]
    faces = {c: [sym_face(g, n, c, i) for i in range(k + 1)] for k, level in enumerate(cells) if k for c in level}
    return DeltaComplex(cells, faces)


# -- the product complex ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class ProductCell:
    """A simplex in the cube ``cube[0] x ... x cube[n-1]``.

    ``chain`` lists blocks of arrow positions (0-based); the simplex is
    ``0 <= x_B1 <= ... <= x_Bk <= 1`` with coordinates equal within a block.
    """

    cube: tuple[str, ...]
    chain: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.chain)

    def __str__(self) -> str:
        blocks = " < ".join("{" + ",".join(str(p + 1) for p in b) + "}" for b in self.chain)
        return f"({','.join(self.cube)}" + (f" | {blocks})" if blocks else ")")


def _ordered_partitions(positions: tuple[int, ...], k: int):
    for assign in itertools.product(range(k), repeat=len(positions)):
        if len(set(assign)) == k:
            yield tuple(tuple(p for p, b in zip(positions, assign) if b == j) for j in range(k))


def product_face(g: OrientedGraph, c: ProductCell, i: int) -> ProductCell:
    """``d_0`` sets the first block to 0 (arrow sources), ``d_k`` sets the last
    block to 1 (arrow targets), other ``d_i`` merge blocks ``i`` and ``i + 1``."""
    k = c.dim
    if not 0 <= i <= k or k == 0:
        raise ValueError(f"face index {i} out of range for a {k}-cell")
    cube, chain = list(c.cube), list(c.chain)
    if i == 0:
        for p in chain[0]:
            cube[p] = g.src(cube[p])
        chain = chain[1:]
    elif i == k:
        for p in chain[-1]:
            cube[p] = g.tgt(cube[p])
        chain = chain[:-1]
    else:
        chain = chain[: i - 1] + [tuple(sorted(chain[i - 1] + chain[i]))] + chain[i + 1 :]
    return ProductCell(tuple(cube), tuple(chain))


def permute_cell(c: ProductCell, perm: tuple[int, ...]) -> ProductCell:
    """Move the factor in position ``p`` to position ``perm[p]``."""
    cube = [""] * len(c.cube)
    for p, x in enumerate(c.cube):
        cube[perm[p]] = x
    return ProductCell(tuple(cube), tuple(tuple(sorted(perm[p] for p in b)) for b in c.chain))


def symmetric_group_generators(n: int) -> list[tuple[int, ...]]:
    """A transposition and an n-cycle, which generate the symmetric group."""
    if n < 2:
        return []
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((p + 1) % n for p in range(n))
    return [swap] if n == 2 else [swap, cycle]


def product_top_cells(g: OrientedGraph, n: int) -> int:
    if g.arrows:
        return len(g.arrows) ** n * factorial(n)
    return len(g.vertices) ** n


def product_complex(
    g: OrientedGraph, n: int, max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS
) -> tuple[DeltaComplex, CellAction]:
    """``Γ^n`` with its cube-and-shuffle cells, and the action permuting factors."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _guard(product_top_cells(g, n), max_top_cells, f"Γ^{n}")
    arrows = set(g.arrow_labels)
    factors = g.vertices + g.arrow_labels
    levels: list[list[ProductCell]] = [[] for _ in range(n + 1)]
    for cube in itertools.product(factors, repeat=n):
        positions = tuple(p for p, x in enumerate(cube) if x in arrows)
        if not positions:
            levels[0].append(ProductCell(cube, ()))
            continue
        for k in range(1, len(positions) + 1):
            for chain in _ordered_partitions(positions, k):
                levels[k].append(ProductCell(cube, chain))
    faces = {c: [product_face(g, c, i) for i in range(k + 1)] for k, level in enumerate(levels) if k for c in level}
    dc = DeltaComplex(levels, faces)
    gens = tuple({c: permute_cell(c, perm) for c in dc} for perm in symmetric_group_generators(n))
    return dc, CellAction(gens)


def orbit_label(g: OrientedGraph, c: ProductCell) -> SymCell:
    """Occurrence counts of a product cell, which are constant on its orbit."""
    arrows = set(g.arrow_labels)
    a: dict[str, int] = {}
    for x in c.cube:
        if x not in arrows:
            a[x] = a.get(x, 0) + 1
    r: dict[str, list[int]] = {}
    for j, block in enumerate(c.chain):
        for p in block:
            r.setdefault(c.cube[p], [0] * c.dim)[j] += 1
    return SymCell(a, {γ: tuple(t) for γ, t in r.items()}, c.dim)


@dataclass(frozen=True)
class QuotientSym:
    complex: DeltaComplex  # cells are orbit representatives
    labels: Mapping[ProductCell, SymCell]  # every product cell to its orbit's label
    orbit: Mapping[ProductCell, ProductCell]

    def relabeled(self) -> DeltaComplex:
        return relabel(self.complex, self.labels)


def quotient_sym(g: OrientedGraph, n: int, max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS) -> QuotientSym:
    dc, action = product_complex(g, n, max_top_cells)
    q, orbit = quotient(dc, action)
    return QuotientSym(q, {c: orbit_label(g, c) for c in dc}, orbit)


@dataclass(frozen=True)
class Comparison:
    match: bool
    f_vector: list[int]
    quotient_f_vector: list[int]
    product_f_vector: list[int]
    reason: str | None = None

    def to_json(self) -> dict:
        out = {
            "match": self.match,
            "f_vector": self.f_vector,
            "quotient_f_vector": self.quotient_f_vector,
            "product_f_vector": self.product_f_vector,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def compare(g: OrientedGraph, n: int, max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS) -> Comparison:
    """Check that orbit labels give a face-compatible bijection onto the direct cells."""
    direct = sym_complex(g, n, max_top_cells)
    qs = quotient_sym(g, n, max_top_cells)
    fq = f_vector(qs.complex)
    fp = [0] * (n + 1)
    for c in qs.labels:
        fp[c.dim] += 1
    while fp and not fp[-1]:
        fp.pop()
    result = lambda ok, why=None: Comparison(ok, f_vector(direct), fq, fp, why)  # noqa: E731

    for c, rep in qs.orbit.items():
        if qs.labels[c] != qs.labels[rep]:
            return result(False, f"label of {c} differs from its orbit representative {rep}")
    for k, level in enumerate(qs.complex.cells):
        labels = [qs.labels[c] for c in level]
        if len(set(labels)) != len(labels):
            return result(False, f"two {k}-orbits share a label")
        if k > direct.dim or set(labels) != set(direct.cells[k]):
            return result(False, f"{k}-cell labels differ from the direct {k}-cells")
    if qs.complex.dim != direct.dim:
        return result(False, "dimensions differ")
    for level in qs.complex.cells[1:]:
        for rep in level:
            mine = [qs.labels[f] for f in qs.complex.faces[rep]]
            if mine != list(direct.faces[qs.labels[rep]]):
                return result(False, f"faces of {qs.labels[rep]} differ")
    return result(True)


def simplicial_for_all_n(g: OrientedGraph) -> bool:
    """Whether ``Sym^n(g)`` is a simplicial complex for every ``n``: exactly when
    the underlying graph is a tree."""
    return is_tree(g)


# -- weights and the essential skeleton --------------------------------------------

def _check_weights(g: OrientedGraph, w: Mapping[str, int]) -> None:
    missing = [v for v in g.vertices if v not in w]
    if missing:
        raise ValueError(f"no weight for vertices {missing}")
    unknown = sorted(set(w) - set(g.vertices))
    if unknown:
        raise ValueError(f"weights given for unknown vertices {unknown}")


def minimal_span(g: OrientedGraph, w: Mapping[str, int]) -> OrientedGraph:
    """Full subgraph on the vertices of minimal weight."""
    _check_weights(g, w)
    if not g.vertices:
        return g
    low = min(w[v] for v in g.vertices)
    return g.induced(v for v in g.vertices if w[v] == low)


def induced_weights(g: OrientedGraph, w: Mapping[str, int], n: int) -> dict[SymCell, int]:
    """Weight of each vertex of ``Sym^n(g)``: the sum of the weights of its points."""
    _check_weights(g, w)
    return {c: sum(w[v] * x for v, x in c.a.items()) for c in sym_cells(g, n, 0)}


def skeleton_complex(
    g: OrientedGraph, w: Mapping[str, int], n: int, max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS
) -> DeltaComplex:
    return sym_complex(minimal_span(g, w), n, max_top_cells)

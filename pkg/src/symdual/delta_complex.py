"""Delta-complexes with ordered face maps, integral homology, and group quotients.

Cells are arbitrary hashable keys supplied by the builder.  A ``k``-cell carries
``k + 1`` faces, position ``i`` holding ``d_i``.  Homology is unreduced and
computed over the integers with a sparse Smith normal form.
"""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, Sequence

log = logging.getLogger(__name__)

Key = Hashable


class ActionError(ValueError):
    def __init__(self, message: str, cell: Key = None, generator: int | None = None, index: int | None = None):
        self.cell = cell
        self.generator = generator
        self.index = index
        super().__init__(message)


class DeltaComplex:
    """Cells graded by dimension plus ordered face lists.

    ``cells[k]`` lists the ``k``-cells; ``faces[key]`` lists ``d_0, ..., d_k`` of a
    ``k``-cell (absent or empty for vertices).  Construction does no checking;
    call :func:`validate`.
    """

    def __init__(self, cells: Iterable[Iterable[Key]], faces: Mapping[Key, Sequence[Key]] | None = None):
        levels = [tuple(level) for level in cells]
        while levels and not levels[-1]:
            levels.pop()
        self.cells: tuple[tuple[Key, ...], ...] = tuple(levels)
        self.faces: Mapping[Key, tuple[Key, ...]] = MappingProxyType(
            {k: tuple(v) for k, v in (faces or {}).items()}
        )
        self._where: dict[Key, tuple[int, int]] = {}
        for d, level in enumerate(self.cells):
            for i, key in enumerate(level):
                self._where.setdefault(key, (d, i))

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def __contains__(self, key: Key) -> bool:
        return key in self._where

    def __len__(self) -> int:
        return sum(len(level) for level in self.cells)

    def __iter__(self):
        for level in self.cells:
            yield from level

    def __eq__(self, other: object) -> bool:
        """Equal as labelled complexes: same cells per dimension and same face lists."""
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        if [set(c) for c in self.cells] != [set(c) for c in other.cells]:
            return False
        return all(self.face_list(k) == other.face_list(k) for k in self)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"DeltaComplex(f_vector={f_vector(self)})"

    def dimension(self, key: Key) -> int:
        return self._where[key][0]

    def index(self, key: Key) -> int:
        """Position of ``key`` within its dimension."""
        return self._where[key][1]

    def face_list(self, key: Key) -> tuple[Key, ...]:
        return self.faces.get(key, ())

    def face(self, key: Key, i: int) -> Key:
        return self.faces[key][i]

    def to_json(self, key_str=str) -> dict:
        return {
            "cells": [[key_str(k) for k in level] for level in self.cells],
            "faces": {key_str(k): [key_str(f) for f in self.face_list(k)] for level in self.cells[1:] for k in level},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> DeltaComplex:
        return cls(data["cells"], data.get("faces", {}))


@dataclass(frozen=True)
class Violation:
    """First failure found by :func:`validate`."""

    cell: Key
    indices: tuple[int, ...]
    message: str


def validate(dc: DeltaComplex) -> Violation | None:
    """Return ``None`` if ``dc`` is a Delta-complex, else the first offending cell."""
    seen: set = set()
    for d, level in enumerate(dc.cells):
        for key in level:
            if key in seen:
                return Violation(key, (), f"cell {key!r} is listed twice")
            seen.add(key)
            fs = dc.face_list(key)
            if len(fs) != (d + 1 if d > 0 else 0):
                return Violation(key, (), f"{d}-cell {key!r} has {len(fs)} faces")
            for i, f in enumerate(fs):
                if f not in dc or dc.dimension(f) != d - 1:
                    return Violation(key, (i,), f"face d_{i} of {key!r} is not a {d - 1}-cell")
    for d, level in enumerate(dc.cells[2:], start=2):
        for key in level:
            fs = dc.faces[key]
            for j in range(d + 1):
                for i in range(j):
                    if dc.face(fs[j], i) != dc.face(fs[i], j - 1):
                        return Violation(key, (i, j), f"d_{i} d_{j} != d_{j - 1} d_{i} on {key!r}")
    return None


def f_vector(dc: DeltaComplex) -> list[int]:
    return [len(level) for level in dc.cells]


def euler_characteristic(dc: DeltaComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(f_vector(dc)))


# -- integer matrices ----------------------------------------------------------

@dataclass
class IntMatrix:
    """Sparse integer matrix; ``entries`` holds only nonzero values."""

    n_rows: int
    n_cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        n_cols = len(rows[0]) if rows else 0
        entries = {(i, j): int(v) for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(len(rows), n_cols, entries)

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for (j, k), v in other.entries.items():
            by_row[j].append((k, v))
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (i, j), v in self.entries.items():
            for k, w in by_row.get(j, ()):
                acc[i, k] += v * w
        return IntMatrix(self.n_rows, other.n_cols, {p: v for p, v in acc.items() if v})

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]  # nonzero invariant factors, each dividing the next
    rank: int


class _Sparse:
    """Row- and column-indexed sparse matrix supporting unimodular operations.

    Empty rows are deleted eagerly so ``rows`` is empty exactly when the matrix is zero.
    """

    def __init__(self, entries: Mapping[tuple[int, int], int]):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = defaultdict(set)
        for (i, j), v in entries.items():
            if v:
                self.rows.setdefault(i, {})[j] = v
                self.cols[j].add(i)

    def add_row(self, dst: int, src: int, q: int) -> None:
        """row[dst] -= q * row[src]"""
        rd = self.rows[dst]
        for j, v in self.rows[src].items():
            nv = rd.get(j, 0) - q * v
            if nv:
                rd[j] = nv
                self.cols[j].add(dst)
            elif j in rd:
                del rd[j]
                self.cols[j].discard(dst)
        if not rd:
            del self.rows[dst]

    def add_col(self, dst: int, src: int, q: int) -> None:
        """col[dst] -= q * col[src]; never empties a row, since row[src] stays."""
        for i in list(self.cols[src]):
            row = self.rows[i]
            nv = row.get(dst, 0) - q * row[src]
            if nv:
                row[dst] = nv
                self.cols[dst].add(i)
            elif dst in row:
                del row[dst]
                self.cols[dst].discard(i)

    def drop(self, r: int, c: int) -> None:
        """Remove row r and column c, which must meet only at the pivot."""
        for j in self.rows.pop(r):
            self.cols[j].discard(r)
        del self.cols[c]

    def eliminate_unit(self, r: int, c: int) -> None:
        # after clearing column c by row ops, column ops with a unit pivot
        # touch only row r, so the pair can simply be removed
        p = self.rows[r][c]
        for i in list(self.cols[c]):
            if i != r:
                self.add_row(i, r, self.rows[i][c] * p)
        self.drop(r, c)


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors and rank of an integer matrix, in exact arithmetic.

    Unit pivots are eliminated first (cheapest column first, to limit fill-in);
    what remains is reduced with minimal-absolute-value pivots.
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m)
    a = _Sparse(m.entries)
    diag: list[int] = []

    progress = True
    while progress:
        progress = False
        for r in sorted(a.rows, key=lambda i: len(a.rows[i])):
            row = a.rows.get(r)
            if not row:
                continue
            units = [j for j, v in row.items() if v in (1, -1)]
            if units:
                c = min(units, key=lambda j: len(a.cols[j]))
                a.eliminate_unit(r, c)
                diag.append(1)
                progress = True

    while a.rows:
        r, c, p = min(
            ((i, j, v) for i, row in a.rows.items() for j, v in row.items()),
            key=lambda t: abs(t[2]),
        )
        if p in (1, -1):
            a.eliminate_unit(r, c)
            diag.append(1)
            continue
        done = True
        for i in list(a.cols[c]):
            if i != r:
                a.add_row(i, r, a.rows[i][c] // p)
                if c in a.rows.get(i, ()):
                    done = False
        for j in list(a.rows[r]):
            if j != c:
                a.add_col(j, c, a.rows[r][j] // p)
                if j in a.rows[r]:
                    done = False
        if done:
            diag.append(abs(p))
            a.drop(r, c)

    rest = [d for d in diag if d != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = gcd(rest[i], rest[j])
            rest[i], rest[j] = g, rest[i] // g * rest[j]
    factors = tuple(sorted([1] * (len(diag) - len(rest)) + rest))
    return SmithForm(factors, len(factors))


# -- homology ------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def boundary_matrix(dc: DeltaComplex, k: int) -> IntMatrix:
    """Matrix of ``sum_i (-1)^i d_i`` from ``k``-chains to ``(k-1)``-chains."""
    if k < 0:
        raise ValueError(f"negative degree {k}")
    f = f_vector(dc)
    n_rows = f[k - 1] if 0 <= k - 1 < len(f) else 0
    n_cols = f[k] if k < len(f) else 0
    entries: dict[tuple[int, int], int] = defaultdict(int)
    if k >= 1 and n_cols:
        for col, key in enumerate(dc.cells[k]):
            for i, face in enumerate(dc.faces[key]):
                entries[dc.index(face), col] += -1 if i % 2 else 1
    return IntMatrix(n_rows, n_cols, {p: v for p, v in entries.items() if v})


# below this many nonzeros a process pool costs more than it saves
_PARALLEL_THRESHOLD = 20_000


def homology(dc: DeltaComplex, workers: int | None = 1) -> HomologyResult:
    """Integral homology ``H_0, ..., H_dim``.

    ``workers`` > 1 computes the boundary matrices' normal forms in separate
    processes; ``None`` means one per CPU.  The result does not depend on it.
    """
    top = dc.dim
    if top < 0:
        return HomologyResult((), ())
    mats = [boundary_matrix(dc, k) for k in range(1, top + 1)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(mats) > 1 and sum(len(m.entries) for m in mats) > _PARALLEL_THRESHOLD:
        with ProcessPoolExecutor(max_workers=min(workers, len(mats))) as pool:
            forms = list(pool.map(smith_normal_form, mats))
    else:
        forms = [smith_normal_form(m) for m in mats]
    ranks = [0] + [s.rank for s in forms] + [0]
    f = f_vector(dc)
    betti = tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(top + 1))
    torsion = tuple(
        tuple(x for x in forms[k].factors if x > 1) if k < top else () for k in range(top + 1)
    )
    return HomologyResult(betti, torsion)


# -- vertices and simpliciality -------------------------------------------------

def cell_vertices(dc: DeltaComplex) -> dict[Key, tuple[Key, ...]]:
    """Ordered vertices of every cell, obtained by composing face maps.

    Vertex ``j`` of a ``k``-cell is the one opposite ``d_j``; the first ``k`` of
    them are the vertices of ``d_k`` and the last is the last vertex of ``d_0``.
    """
    verts: dict[Key, tuple[Key, ...]] = {}
    for d, level in enumerate(dc.cells):
        for key in level:
            if d == 0:
                verts[key] = (key,)
            else:
                fs = dc.faces[key]
                verts[key] = verts[fs[d]] + (verts[fs[0]][-1],)
    return verts


def is_simplicial(dc: DeltaComplex) -> bool:
    verts = cell_vertices(dc)
    for level in dc.cells:
        seen = set()
        for key in level:
            vs = verts[key]
            if len(set(vs)) != len(vs):
                return False
            s = frozenset(vs)
            if s in seen:
                return False
            seen.add(s)
    return True


def spanned_subcomplex(dc: DeltaComplex, vertices: Iterable[Key]) -> DeltaComplex:
    """Full subcomplex of the cells all of whose vertices lie in ``vertices``."""
    keep_v = set(vertices)
    verts = cell_vertices(dc)
    cells = [[k for k in level if keep_v.issuperset(verts[k])] for level in dc.cells]
    return DeltaComplex(cells, {k: dc.face_list(k) for level in cells[1:] for k in level})


def relabel(dc: DeltaComplex, mapping: Mapping[Key, Key]) -> DeltaComplex:
    cells = [[mapping[k] for k in level] for level in dc.cells]
    faces = {mapping[k]: [mapping[f] for f in dc.face_list(k)] for level in dc.cells[1:] for k in level}
    return DeltaComplex(cells, faces)


# -- group actions ---------------------------------------------------------------

@dataclass(frozen=True)
class CellAction:
    """Generators of a group acting on cells; keys missing from a generator are fixed."""

    generators: tuple[Mapping[Key, Key], ...]

    def image(self, g: int, key: Key) -> Key:
        return self.generators[g].get(key, key)


def _check_action(dc: DeltaComplex, act: CellAction) -> None:
    for gi in range(len(act.generators)):
        for d, level in enumerate(dc.cells):
            images = [act.image(gi, k) for k in level]
            if set(images) != set(level):
                bad = next((k for k, im in zip(level, images) if im not in dc or dc.dimension(im) != d), level[0])
                raise ActionError(f"generator {gi} does not permute the {d}-cells (at {bad!r})", bad, gi)
            if d == 0:
                continue
            for key, im in zip(level, images):
                for i, f in enumerate(dc.faces[key]):
                    if dc.faces[im][i] != act.image(gi, f):
                        raise ActionError(
                            f"generator {gi} does not commute with d_{i} at {key!r}", key, gi, i
                        )


def quotient(dc: DeltaComplex, act: CellAction) -> tuple[DeltaComplex, dict[Key, Key]]:
    """Orbit complex of ``dc`` under ``act``.

    Returns the quotient, whose cells are named by their first member in
    ``dc``'s order, and the map from every cell to that representative.
    """
    _check_action(dc, act)
    parent: dict[Key, Key] = {}

    def find(x: Key) -> Key:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent.get(x, x)
        return root

    for gi in range(len(act.generators)):
        for key in dc:
            a, b = find(key), find(act.image(gi, key))
            if a != b:
                # keep the earlier cell as root so representatives are deterministic
                if dc.index(b) < dc.index(a):
                    a, b = b, a
                parent[b] = a

    orbit = {key: find(key) for key in dc}
    cells = [[k for k in level if orbit[k] == k] for level in dc.cells]
    faces: dict[Key, tuple[Key, ...]] = {}
    for level in dc.cells[1:]:
        for key in level:
            image = tuple(orbit[f] for f in dc.faces[key])
            rep = orbit[key]
            if rep not in faces:
                faces[rep] = image
            elif faces[rep] != image:
                raise ActionError(f"faces of the orbit of {rep!r} are not well defined (at {key!r})", key)
    return DeltaComplex(cells, faces), orbit

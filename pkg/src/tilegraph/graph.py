"""The 2-graph Lambda(T, q, t, w).

Vertices are fillings of the tile satisfying ``sum w(i) v(i) = t (mod q)``;
a path of degree ``n`` is a filling of ``T(n)`` all of whose tile translates
are vertices.  Vertices are indexed lexicographically by their value tuple
read in the canonical (lexicographic) cell order of the tile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BijectionFailure,
    ConstantNotValid,
    CornersNotInvertible,
    DegreeOutOfRange,
    DomainError,
    EnumerationTooLarge,
    InvalidPath,
    NoWitnessUpToBound,
    SourceRangeMismatch,
    TheoremViolation,
)
from .tiles import BasicData, Cell, mod_inverse, region_of_degree, tile_metrics

DEFAULT_LIMIT = 4096

Point = tuple[int, int]


def _pt(p: Sequence[int]) -> Point:
    return (int(p[0]), int(p[1]))


def _leq(a: Point, b: Point) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _join(a: Point, b: Point) -> Point:
    return (max(a[0], b[0]), max(a[1], b[1]))


def _meet(a: Point, b: Point) -> Point:
    return (min(a[0], b[0]), min(a[1], b[1]))


def _add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class Vertex:
    values: tuple[int, ...]  # in canonical tile cell order
    index: int

    def __str__(self):
        return "".join(str(v) for v in self.values)


class Path:
    """A filling of ``T(degree)``; immutable, hashable, compared by value."""

    __slots__ = ("degree", "_grid", "_key")

    def __init__(self, degree: Sequence[int], grid: dict):
        self.degree = _pt(degree)
        self._grid = dict(grid)
        self._key = (self.degree, tuple(sorted(self._grid.items())))

    def __getitem__(self, cell) -> int:
        return self._grid[tuple(cell)]

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self._grid

    def cells(self) -> list[Cell]:
        return sorted(self._grid)

    def items(self):
        return sorted(self._grid.items())

    def as_dict(self) -> dict:
        return dict(self._grid)

    def restriction(self, tile_cells: Sequence[Cell], m: Sequence[int]) -> tuple[int, ...]:
        """Values of ``lambda|_{T+m}`` in tile cell order."""
        m1, m2 = m
        return tuple(self._grid[(a + m1, b + m2)] for a, b in tile_cells)

    def __eq__(self, other):
        return isinstance(other, Path) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Path(degree={self.degree}, {len(self._grid)} cells)"


@dataclass(frozen=True)
class VertexMatrices:
    B: np.ndarray  # B[u, v] = number of blue edges with range u and source v
    R: np.ndarray


@dataclass
class TileGraph:
    """Vertices and skeleton of Lambda(T, q, t, w), built once per data."""

    data: BasicData
    vertices: list[Vertex]
    index: dict
    B: np.ndarray
    R: np.ndarray
    _paths: dict = field(default_factory=dict, repr=False)

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.data.tile.cells

    def __len__(self):
        return len(self.vertices)

    def vertex(self, key) -> Vertex:
        """Look a vertex up by index, value tuple, digit string or mapping."""
        if isinstance(key, Vertex):
            return key
        if isinstance(key, (int, np.integer)):
            return self.vertices[int(key)]
        if isinstance(key, str):
            key = tuple(int(ch) for ch in key)
        if isinstance(key, dict):
            key = tuple(key[c] for c in self.cells)
        key = tuple(int(x) % self.data.q for x in key)
        try:
            return self.vertices[self.index[key]]
        except KeyError:
            raise DomainError(f"{key} is not a vertex") from None

    def vertex_path(self, v) -> Path:
        v = self.vertex(v)
        return Path((0, 0), dict(zip(self.cells, v.values)))

    def range_of(self, lam: Path) -> Vertex:
        return self.vertex(lam.restriction(self.cells, (0, 0)))

    def source_of(self, lam: Path) -> Vertex:
        return self.vertex(lam.restriction(self.cells, lam.degree))

    def edge(self, colour: int, r, s) -> Path:
        """The unique edge of degree e_colour from ``s`` to ``r``."""
        r, s = self.vertex(r), self.vertex(s)
        mat = self.B if colour == 1 else self.R
        if not mat[r.index, s.index]:
            raise DomainError(f"no {'blue' if colour == 1 else 'red'} edge from {s} to {r}")
        shift = (1, 0) if colour == 1 else (0, 1)
        grid = {_add(c, shift): x for c, x in zip(self.cells, s.values)}
        grid.update(zip(self.cells, r.values))
        return Path(shift, grid)

    def edges_from_range(self, colour: int, r) -> list[Path]:
        r = self.vertex(r)
        mat = self.B if colour == 1 else self.R
        return [self.edge(colour, r, int(s)) for s in np.flatnonzero(mat[r.index])]

    def paths_from(self, v, n: Sequence[int]) -> list[Path]:
        """All paths of degree ``n`` with range ``v``, in deterministic order."""
        v = self.vertex(v)
        n = _pt(n)
        key = (v.index, n)
        if key in self._paths:
            return self._paths[key]
        if n == (0, 0):
            out = [self.vertex_path(v)]
        else:
            colour = 1 if n[0] > 0 else 2
            prev = self.paths_from(v, _sub(n, (1, 0) if colour == 1 else (0, 1)))
            out = []
            for lam in prev:
                s = self.source_of(lam)
                for e in self.edges_from_range(colour, s):
                    out.append(compose_paths(self.data, lam, e, graph=self))
        self._paths[key] = out
        return out

    def all_paths(self, n: Sequence[int]) -> list[Path]:
        return [lam for v in self.vertices for lam in self.paths_from(v, n)]


# ---------------------------------------------------------------- vertices


def _require_corners(data: BasicData) -> None:
    if not data.flags.invertible_corners:
        raise CornersNotInvertible(
            f"w(c1 e1) = {data.weight(data.tile.corner1)} and w(c2 e2) = "
            f"{data.weight(data.tile.corner2)} must be units modulo {data.q}"
        )


def forced_value(data: BasicData, corner: Cell, values: dict, offset: Sequence[int]) -> int:
    """The unique value at ``offset + corner`` making ``T + offset`` a vertex."""
    o1, o2 = offset
    acc = data.t
    for cell, wt in zip(data.tile.cells, data.w):
        if cell != corner and wt:
            acc -= wt * values[(cell[0] + o1, cell[1] + o2)]
    return (mod_inverse(data.weight(corner), data.q) * acc) % data.q


def is_vertex(data: BasicData, values: Sequence[int]) -> bool:
    return sum(w * x for w, x in zip(data.w, values)) % data.q == data.t


def enumerate_vertices(data: BasicData, limit: int = DEFAULT_LIMIT) -> list[Vertex]:
    _require_corners(data)
    count = data.q ** (len(data.tile) - 1)
    if count > limit:
        raise EnumerationTooLarge(f"{count} vertices exceed the limit {limit}")
    cells = data.tile.cells
    corner = data.tile.corner1
    k = cells.index(corner)
    out = []
    for free in itertools.product(range(data.q), repeat=len(cells) - 1):
        vals = dict(zip(cells[:k] + cells[k + 1 :], free))
        vals[corner] = forced_value(data, corner, vals, (0, 0))
        out.append(tuple(vals[c] for c in cells))
    out.sort()
    return [Vertex(v, i) for i, v in enumerate(out)]


def _all_vertex_tuples(data: BasicData) -> list[tuple[int, ...]]:
    """Brute-force vertex list that does not need invertible corners."""
    return [v for v in itertools.product(range(data.q), repeat=len(data.tile)) if is_vertex(data, v)]


def _skeleton_matrix(cells, vertices, shift: Point) -> np.ndarray:
    """``M[u, v] = 1`` iff ``u(m) = v(m - shift)`` on ``T & (T + shift)``."""
    pos = {c: i for i, c in enumerate(cells)}
    overlap = [c for c in cells if _sub(c, shift) in pos]
    back = [pos[_sub(c, shift)] for c in overlap]
    front = [pos[c] for c in overlap]
    by_key: dict = {}
    for j, v in enumerate(vertices):
        by_key.setdefault(tuple(v[i] for i in back), []).append(j)
    mat = np.zeros((len(vertices), len(vertices)), dtype=np.int64)
    for i, u in enumerate(vertices):
        for j in by_key.get(tuple(u[k] for k in front), ()):
            mat[i, j] = 1
    return mat


def vertex_matrices(data: BasicData, limit: int = DEFAULT_LIMIT) -> VertexMatrices:
    g = build_graph(data, limit)
    return VertexMatrices(g.B.copy(), g.R.copy())


@lru_cache(maxsize=64)
def build_graph(data: BasicData, limit: int = DEFAULT_LIMIT) -> TileGraph:
    vertices = enumerate_vertices(data, limit)
    values = [v.values for v in vertices]
    B = _skeleton_matrix(data.tile.cells, values, (1, 0))
    R = _skeleton_matrix(data.tile.cells, values, (0, 1))
    B.setflags(write=False)
    R.setflags(write=False)
    return TileGraph(data, vertices, {v: i for i, v in enumerate(values)}, B, R)


# ---------------------------------------------------------------- paths


def check_path(data: BasicData, degree: Sequence[int], grid: dict) -> None:
    degree = _pt(degree)
    region = region_of_degree(data.tile, degree)
    if set(grid) != set(region.cells):
        raise InvalidPath(f"domain does not match T{degree}")
    for k in itertools.product(range(degree[0] + 1), range(degree[1] + 1)):
        vals = [grid[_add(c, k)] for c in data.tile.cells]
        if not is_vertex(data, vals):
            raise InvalidPath(f"restriction to T+{k} is not a vertex")


def make_path(data: BasicData, degree: Sequence[int], grid: dict) -> Path:
    grid = {tuple(c): int(x) % data.q for c, x in grid.items()}
    check_path(data, degree, grid)
    return Path(degree, grid)


def path_from_rows(data: BasicData, degree: Sequence[int], rows_bottom_up: Sequence[str]) -> Path:
    """Read a path from text rows listed bottom row first, one digit per cell."""
    grid = {}
    for y, row in enumerate(rows_bottom_up):
        for x, ch in enumerate(row.strip()):
            grid[(x, y)] = int(ch)
    return make_path(data, degree, grid)


def segment(lam: Path, m: Sequence[int], n: Sequence[int], tile=None) -> Path:
    """``lambda(m, n)``: the path of degree ``n - m`` with ``i -> lambda(m + i)``."""
    m, n = _pt(m), _pt(n)
    if not (_leq((0, 0), m) and _leq(m, n) and _leq(n, lam.degree)):
        raise DegreeOutOfRange(f"need 0 <= {m} <= {n} <= {lam.degree}")
    if tile is None:
        tile = _tile_of(lam)
    d = _sub(n, m)
    region = region_of_degree(tile, d)
    return Path(d, {c: lam[_add(c, m)] for c in region.cells})


def _tile_of(lam: Path):
    """Recover the tile from a path's domain: ``T + d`` is the part of ``T(d)`` above ``d``."""
    from .tiles import Tile

    d1, d2 = lam.degree
    return Tile(tuple((a - d1, b - d2) for a, b in lam.cells() if a >= d1 and b >= d2))


def factorize_path(lam: Path, m: Sequence[int], tile=None) -> tuple[Path, Path]:
    m = _pt(m)
    if not (_leq((0, 0), m) and _leq(m, lam.degree)):
        raise DegreeOutOfRange(f"factorisation point {m} outside [0, {lam.degree}]")
    if tile is None:
        tile = _tile_of(lam)
    return segment(lam, (0, 0), m, tile), segment(lam, m, lam.degree, tile)


def compose_paths(data: BasicData, mu: Path, nu: Path, graph: TileGraph | None = None) -> Path:
    """The unique path ``lambda`` with ``lambda(0, m) = mu`` and ``lambda(m, m+n) = nu``.

    The two rectangles left uncovered by ``T(m)`` and ``T(n) + m`` are filled
    one cell at a time.  The bottom-right one goes column by column from the
    left, each column top to bottom, solving for the ``c1 e1`` corner of a
    tile; the upper-left one goes row by row from the bottom, each row right to
    left, solving for the ``c2 e2`` corner.
    """
    _require_corners(data)
    cells = data.tile.cells
    m, n = mu.degree, nu.degree
    if mu.restriction(cells, m) != nu.restriction(cells, (0, 0)):
        raise SourceRangeMismatch("s(mu) != r(nu)")
    c1, c2 = data.tile.c1, data.tile.c2
    grid = mu.as_dict()
    for c, x in nu.items():
        grid[_add(c, m)] = x
    corner1, corner2 = data.tile.corner1, data.tile.corner2
    for j1 in range(c1 + m[0] + 1, c1 + m[0] + n[0] + 1):
        for j2 in range(m[1] - 1, -1, -1):
            grid[(j1, j2)] = forced_value(data, corner1, grid, (j1 - c1, j2))
    for j2 in range(c2 + m[1] + 1, c2 + m[1] + n[1] + 1):
        for j1 in range(m[0] - 1, -1, -1):
            grid[(j1, j2)] = forced_value(data, corner2, grid, (j1, j2 - c2))
    d = _add(m, n)
    out = Path(d, grid)
    if len(grid) != len(region_of_degree(data.tile, d)):
        raise TheoremViolation("composition did not fill T(m+n) exactly")
    return out


def fill_forced(data: BasicData, degree: Sequence[int], known: dict) -> dict | None:
    """Propagate forced cells in any order until ``T(degree)`` is filled.

    Independent of :func:`compose_paths`' fill order; returns ``None`` when
    some cell is never forced.
    """
    degree = _pt(degree)
    cells = data.tile.cells
    grid = dict(known)
    region = region_of_degree(data.tile, degree).cells
    units = [c for c, wt in zip(cells, data.w) if np.gcd(wt, data.q) == 1]
    placements = list(itertools.product(range(degree[0] + 1), range(degree[1] + 1)))
    progress = True
    while progress and len(grid) < len(region):
        progress = False
        for k in placements:
            missing = [c for c in cells if _add(c, k) not in grid]
            if len(missing) == 1 and missing[0] in units:
                grid[_add(missing[0], k)] = forced_value(data, missing[0], grid, k)
                progress = True
    return grid if len(grid) == len(region) else None


# ---------------------------------------------------------------- skeleton checks


@dataclass(frozen=True)
class SquareReport:
    squares: int
    blue_red: int
    red_blue: int
    holds: bool
    mismatched_pairs: int


def check_square_bijection(data: BasicData, strict: bool = False) -> SquareReport:
    """Brute-force the degree-(1,1) squares against blue-red and red-blue paths."""
    cells = data.tile.cells
    verts = _all_vertex_tuples(data)
    idx = {v: i for i, v in enumerate(verts)}
    B = _skeleton_matrix(cells, verts, (1, 0))
    R = _skeleton_matrix(cells, verts, (0, 1))
    region = sorted(region_of_degree(data.tile, (1, 1)).cells)
    sq = np.zeros_like(B)
    for fill in itertools.product(range(data.q), repeat=len(region)):
        grid = dict(zip(region, fill))
        ok = True
        ends = []
        for k in ((0, 0), (1, 0), (0, 1), (1, 1)):
            v = tuple(grid[_add(c, k)] for c in cells)
            if v not in idx:
                ok = False
                break
            ends.append(idx[v])
        if ok:
            sq[ends[0], ends[3]] += 1
    br, rb = B @ R, R @ B
    mismatched = int(np.count_nonzero((br != sq) | (rb != sq)))
    report = SquareReport(int(sq.sum()), int(br.sum()), int(rb.sum()), mismatched == 0, mismatched)
    if strict and not report.holds:
        raise BijectionFailure(
            f"{mismatched} vertex pairs where squares, blue-red and red-blue counts disagree"
        )
    return report


# ---------------------------------------------------------------- connectivity


def diagonal_steps(tile) -> int:
    """The ``k`` with ``(k-1)(e1+e2)`` in ``T`` and ``k(e1+e2)`` not in ``T``."""
    k = 1
    while (k, k) in tile:
        k += 1
    return k


def _path11(data: BasicData, r: tuple, s: tuple) -> Path:
    """The unique degree-(1,1) path from ``s`` to ``r`` when they overlap correctly."""
    cells = data.tile.cells
    grid = dict(zip(cells, r))
    for c, x in zip(cells, s):
        cc = _add(c, (1, 1))
        if grid.get(cc, x) != x:
            raise DomainError("vertices do not agree on the (1,1) overlap")
        grid[cc] = x
    c1, c2 = data.tile.c1, data.tile.c2
    grid[(c1 + 1, 0)] = forced_value(data, data.tile.corner1, grid, (1, 0))
    grid[(0, c2 + 1)] = forced_value(data, data.tile.corner2, grid, (0, 1))
    return make_path(data, (1, 1), grid)


def connect_vertices(data: BasicData, v, u, limit: int = DEFAULT_LIMIT) -> Path:
    """A path of degree ``k(e1+e2)`` with range ``v`` and source ``u``.

    Built one diagonal step at a time; cells left free by the construction
    are filled with 0.
    """
    _require_corners(data)
    g = build_graph(data, limit)
    v, u = g.vertex(v), g.vertex(u)
    cells = data.tile.cells
    cellset = set(cells)
    corner = data.tile.corner1
    k = diagonal_steps(data.tile)
    mu = g.vertex_path(v)
    for p in range(k):
        src = dict(zip(cells, g.source_of(mu).values))
        target = dict(zip(cells, u.values))
        lag = k - p - 1
        nxt = {}
        for i in cells:
            up = _add(i, (1, 1))
            if up in cellset:
                nxt[i] = src[up]
            back = _sub(i, (lag, lag))
            if back in cellset:
                nxt[i] = target[back]
        for i in cells:
            if i not in nxt and i != corner:
                nxt[i] = 0
        if corner not in nxt:
            nxt[corner] = forced_value(data, corner, nxt, (0, 0))
        step = _path11(data, g.source_of(mu).values, tuple(nxt[c] for c in cells))
        mu = compose_paths(data, mu, step, graph=g)
    if g.source_of(mu) != u or g.range_of(mu) != v:
        raise TheoremViolation("diagonal construction missed its endpoints")
    return mu


# ---------------------------------------------------------------- aperiodicity


@dataclass
class AperiodicityReport:
    vertex: Vertex
    m: Point
    n: Point
    witness: Path | None
    bound: Point
    method: str  # "constructive", "search" or "none"
    status: str  # "witness", "periodic" or "inconclusive"
    diagnostic: str = ""


def separates(lam: Path, m: Point, n: Point, tile) -> bool:
    j = _join(m, n)
    d = lam.degree
    if not _leq(j, d):
        return False
    ext = _sub(d, j)
    return segment(lam, m, _add(m, ext), tile) != segment(lam, n, _add(n, ext), tile)


def _zero_path(data: BasicData, d: Point) -> Path:
    return Path(d, {c: 0 for c in region_of_degree(data.tile, d).cells})


def _first_path(g: TileGraph, v: Vertex, d: Point) -> Path:
    lam = g.vertex_path(v)
    for colour, steps in ((1, d[0]), (2, d[1])):
        for _ in range(steps):
            lam = compose_paths(g.data, lam, g.edges_from_range(colour, g.source_of(lam))[0], graph=g)
    return lam


def _constructive_witness(g: TileGraph, v: Vertex, m: Point, n: Point) -> Path:
    data, tile = g.data, g.data.tile
    j = _join(m, n)
    mu = _first_path(g, v, j)
    cells = tile.cells
    if mu.restriction(cells, m) != mu.restriction(cells, n):
        return mu
    if _leq(m, n) or _leq(n, m):
        lo, hi = (m, n) if _leq(m, n) else (n, m)
        colour = 1 if lo[0] < hi[0] else 2
        shift = (1, 0) if colour == 1 else (0, 1)
        old = segment(mu, lo, _add(lo, shift), tile)
        for e in g.edges_from_range(colour, g.source_of(mu)):
            if e != old:
                return compose_paths(data, mu, e, graph=g)
        raise TheoremViolation("source has a single edge of a colour with c_i >= 1")
    if m[0] < n[0]:
        m, n = n, m
    zero = g.vertex(tuple(0 for _ in cells))
    beta = next(
        g.edge(1, r, zero)
        for r in np.flatnonzero(g.B[:, zero.index])
        if int(r) != zero.index
    )
    alpha = connect_vertices(data, g.source_of(mu), g.range_of(beta))
    tail = _sub(_sub(j, _meet(m, n)), (1, 0))
    lam = compose_paths(data, compose_paths(data, mu, alpha, graph=g), beta, graph=g)
    return compose_paths(data, lam, _zero_path(data, tail), graph=g)


def _degrees_between(lo: Point, hi: Point) -> list[Point]:
    pts = [(a, b) for a in range(lo[0], hi[0] + 1) for b in range(lo[1], hi[1] + 1)]
    return sorted(pts, key=lambda p: (p[0] + p[1], p))


def search_witness(g: TileGraph, v: Vertex, m: Point, n: Point, bound: Point) -> Path | None:
    tile = g.data.tile
    for d in _degrees_between(_join(m, n), bound):
        for lam in g.paths_from(v, d):
            if separates(lam, m, n, tile):
                return lam
    return None


def aperiodicity_witness(
    data: BasicData,
    v,
    m: Sequence[int],
    n: Sequence[int],
    bound: Sequence[int] | None = None,
    limit: int = DEFAULT_LIMIT,
    constructive: bool = True,
) -> AperiodicityReport:
    """Find ``lambda`` in ``v Lambda`` whose ``m``- and ``n``-shifted segments differ.

    Uses the explicit construction when ``t = 0`` and the rule has three
    invertible corners, otherwise searches every degree up to ``bound``
    (default ``m v n + (3, 3)``).  Raises :class:`NoWitnessUpToBound` when
    nothing is found; its report says whether periodicity was certified.
    """
    m, n = _pt(m), _pt(n)
    if m == n:
        raise DomainError("aperiodicity needs m != n")
    g = build_graph(data, limit)
    v = g.vertex(v)
    j = _join(m, n)
    bound = _add(j, (3, 3)) if bound is None else _join(_pt(bound), j)
    if constructive and data.t == 0 and data.flags.three_invertible_corners:
        lam = _constructive_witness(g, v, m, n)
        if not separates(lam, m, n, data.tile) or g.range_of(lam) != v:
            raise TheoremViolation(f"constructed path does not separate {m} and {n}")
        return AperiodicityReport(v, m, n, lam, bound, "constructive", "witness")
    lam = search_witness(g, v, m, n, bound)
    if lam is not None:
        return AperiodicityReport(v, m, n, lam, bound, "search", "witness")
    report = AperiodicityReport(v, m, n, None, bound, "none", "inconclusive", "no witness up to bound")
    diff = _sub(m, n)
    if diff in ((1, -1), (-1, 1)):
        from .subshift import diagonal_periodicity_scan

        scan = diagonal_periodicity_scan(data, limit=limit)
        if scan.certified:
            report.status = "periodic"
            report.diagnostic = scan.diagnostic
    raise NoWitnessUpToBound(f"no path from {v} separates {m} and {n} up to degree {bound}", report)


# ---------------------------------------------------------------- trace shift


@dataclass(frozen=True)
class TraceShiftReport:
    c: int
    vertices: int
    blue_edges: int
    red_edges: int
    holds: bool


def trace_shift_isomorphism(data: BasicData, c: int, limit: int = DEFAULT_LIMIT) -> TraceShiftReport:
    """Check that adding ``c`` everywhere maps Lambda(T,q,0,w) onto Lambda(T,q,t,w)."""
    q = data.q
    c %= q
    if (c * sum(data.w) - data.t) % q:
        raise ConstantNotValid(f"c = {c} does not solve c * sum(w) = t (mod {q})")
    g0 = build_graph(data.with_trace(0), limit)
    gt = build_graph(data, limit)
    image = [gt.index.get(tuple((x + c) % q for x in v.values)) for v in g0.vertices]
    if None in image or len(set(image)) != len(gt):
        raise TheoremViolation("vertex shift is not a bijection")
    counts = []
    for colour, m0, mt in ((1, g0.B, gt.B), (2, g0.R, gt.R)):
        count = 0
        for r in g0.vertices:
            for e in g0.edges_from_range(colour, r):
                shifted = make_path(data, e.degree, {k: x + c for k, x in e.items()})
                s = g0.source_of(e)
                if gt.range_of(shifted).index != image[r.index] or gt.source_of(shifted).index != image[s.index]:
                    raise TheoremViolation("shifted edge does not commute with r and s")
                count += 1
        if count != int(mt.sum()):
            raise TheoremViolation("edge shift is not onto")
        counts.append(count)
    return TraceShiftReport(c, len(g0), counts[0], counts[1], True)


# ---------------------------------------------------------------- simplicity


@dataclass
class SimplicityReport:
    c1_positive: bool
    c2_positive: bool
    trace_zero_or_shiftable: bool
    three_invertible_corners: bool
    holds: bool
    loop: Path | None = None
    entrance: Path | None = None
    notes: list = field(default_factory=list)


def simplicity_hypotheses(data: BasicData, limit: int = DEFAULT_LIMIT) -> SimplicityReport:
    metrics = tile_metrics(data.tile)
    flags = data.flags
    rep = SimplicityReport(
        metrics.c1 >= 1,
        metrics.c2 >= 1,
        data.t == 0 or flags.trace_shift_constant is not None,
        flags.three_invertible_corners,
        False,
    )
    rep.holds = rep.c1_positive and rep.c2_positive and rep.trace_zero_or_shiftable and rep.three_invertible_corners
    if metrics.c2 == 0:
        rep.notes.append("c2 = 0: the blue graph consists of disjoint cycles")
    if metrics.c1 == 0:
        rep.notes.append("c1 = 0: the red graph consists of disjoint cycles")
    if not flags.three_invertible_corners:
        rep.notes.append("rule does not have three invertible corners")
    if rep.holds:
        g = build_graph(data, limit)
        v = g.vertices[0]
        into_v = g.edges_from_range(1, v)
        alpha, beta = into_v[0], into_v[1]
        nu = connect_vertices(data, g.source_of(alpha), v, limit)
        loop = compose_paths(data, alpha, nu, graph=g)
        if g.range_of(loop) != v or g.source_of(loop) != v or beta == alpha:
            raise TheoremViolation("loop with entrance construction failed")
        rep.loop, rep.entrance = loop, beta
    return rep

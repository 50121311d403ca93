"""Finite windows of the algebraic shift space with trace 0.

A window is a valid filling of ``T(extent) + base``; only finite windows
are represented.  Shifting by ``p`` moves the base by ``-p`` so that
``(alpha_p f)(n) = f(n + p)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CountMismatch, TraceNonZero
from .graph import (
    DEFAULT_LIMIT,
    Path,
    _add,
    _pt,
    _require_corners,
    build_graph,
    compose_paths,
    segment,
)
from .tiles import BasicData, region_of_degree


@dataclass(frozen=True)
class WindowConfiguration:
    base: tuple[int, int]
    extent: tuple[int, int]
    values: tuple  # sorted ((cell, value), ...) over absolute cells

    def as_dict(self) -> dict:
        return dict(self.values)

    def __getitem__(self, cell):
        return self.as_dict()[tuple(cell)]

    def local(self) -> dict:
        """Values keyed relative to ``base``."""
        b1, b2 = self.base
        return {(a - b1, b - b2): x for (a, b), x in self.values}


def _window(base, extent, grid: dict) -> WindowConfiguration:
    return WindowConfiguration(_pt(base), _pt(extent), tuple(sorted(grid.items())))


def window_is_valid(data: BasicData, conf: WindowConfiguration) -> bool:
    """Every tile placement inside the window satisfies the trace-0 congruence."""
    grid = conf.as_dict()
    cells = data.tile.cells
    for (a, b) in grid:
        if all((a + i, b + j) in grid for i, j in cells):
            if sum(w * grid[(a + i, b + j)] for (i, j), w in zip(cells, data.w)) % data.q:
                return False
    return True


def sample_window(data: BasicData, extent: Sequence[int], seed: int, limit: int = DEFAULT_LIMIT) -> WindowConfiguration:
    """A pseudo-random valid window on ``T(extent)``, reproducible from ``seed``.

    Picks a random range vertex, then extends by random blue edges and then
    random red edges; every extension step has the same number of choices,
    so all windows are equally likely.
    """
    if data.t != 0:
        raise TraceNonZero("windows of the shift space need trace 0")
    _require_corners(data)
    rng = random.Random(seed)
    g = build_graph(data, limit)
    lam = g.vertex_path(rng.randrange(len(g)))
    extent = _pt(extent)
    for colour, steps in ((1, extent[0]), (2, extent[1])):
        for _ in range(steps):
            edges = g.edges_from_range(colour, g.source_of(lam))
            lam = compose_paths(data, lam, rng.choice(edges), graph=g)
    return _window((0, 0), extent, lam.as_dict())


def enumerate_windows(data: BasicData, extent: Sequence[int]) -> Iterator[WindowConfiguration]:
    """Every valid filling of ``T(extent)``, by backtracking over cells.

    Works cell by cell in column-major order and checks each tile placement
    as soon as its last cell is assigned; it never composes paths, so it
    serves as an independent count of paths of degree ``extent``.
    """
    extent = _pt(extent)
    cells = sorted(region_of_degree(data.tile, extent).cells)
    placements = list(itertools.product(range(extent[0] + 1), range(extent[1] + 1)))
    order = {c: k for k, c in enumerate(cells)}
    closing: dict = {c: [] for c in cells}
    for k in placements:
        members = [_add(c, k) for c in data.tile.cells]
        closing[max(members, key=order.__getitem__)].append(members)
    weights = dict(zip(data.tile.cells, data.w))
    grid: dict = {}

    def ok(cell) -> bool:
        for members in closing[cell]:
            base = members[0]
            total = sum(weights[(m[0] - base[0], m[1] - base[1])] * grid[m] for m in members)
            if (total - data.t) % data.q:
                return False
        return True

    def rec(pos: int):
        if pos == len(cells):
            yield _window((0, 0), extent, grid)
            return
        cell = cells[pos]
        for x in range(data.q):
            grid[cell] = x
            if ok(cell):
                yield from rec(pos + 1)
        del grid[cell]

    yield from rec(0)


def shift_window(conf: WindowConfiguration, p: Sequence[int]) -> WindowConfiguration:
    p1, p2 = _pt(p)
    grid = {(a - p1, b - p2): x for (a, b), x in conf.values}
    return _window((conf.base[0] - p1, conf.base[1] - p2), conf.extent, grid)


def restrict_window(conf: WindowConfiguration, cells) -> dict:
    grid = conf.as_dict()
    return {tuple(c): grid[tuple(c)] for c in cells}


def window_to_path(data: BasicData, conf: WindowConfiguration) -> Path:
    """``k``: read a window as a path, ``k(f)(0, n) = f|_{T(n) + base}``."""
    return Path(conf.extent, conf.local())


def path_to_window(data: BasicData, lam: Path) -> WindowConfiguration:
    """``h``: rebuild the filling from vertex segments, ``f(j + l) = lambda(l, l)(j)``."""
    grid = {}
    tile = data.tile
    for l in itertools.product(range(lam.degree[0] + 1), range(lam.degree[1] + 1)):
        vert = segment(lam, l, l, tile)
        for j in tile.cells:
            cell = _add(j, l)
            x = vert[j]
            if grid.setdefault(cell, x) != x:
                raise CountMismatch(f"segments disagree at {cell}")
    return _window((0, 0), lam.degree, grid)


@dataclass(frozen=True)
class CorrespondenceReport:
    degree: tuple[int, int]
    paths: int
    windows: int
    inverse_checked: int
    holds: bool


def path_window_correspondence(data: BasicData, n: Sequence[int], limit: int = DEFAULT_LIMIT) -> CorrespondenceReport:
    """Compare paths of degree ``n`` with valid fillings of ``T(n)`` one by one."""
    if data.t != 0:
        raise TraceNonZero("the shift-space correspondence needs trace 0")
    n = _pt(n)
    g = build_graph(data, limit)
    paths = g.all_paths(n)
    windows = list(enumerate_windows(data, n))
    by_key = {w.values: w for w in windows}
    checked = 0
    for lam in paths:
        w = path_to_window(data, lam)
        if w.values not in by_key:
            raise CountMismatch(f"path {lam!r} has no matching window")
        if window_to_path(data, w) != lam:
            raise CountMismatch("k(h(lambda)) != lambda")
        checked += 1
    for w in windows:
        if path_to_window(data, window_to_path(data, w)) != w:
            raise CountMismatch("h(k(f)) != f")
    if len(set(paths)) != len(windows) or len(paths) != len(windows):
        raise CountMismatch(f"{len(paths)} paths against {len(windows)} windows")
    return CorrespondenceReport(n, len(paths), len(windows), checked, True)


@dataclass(frozen=True)
class DiagonalScan:
    certified: bool
    pairs: tuple  # diagonal cell pairs (a, a + e1 - e2) inside the tile
    violating_vertex: str | None
    diagnostic: str


def diagonal_periodicity_scan(data: BasicData, limit: int = DEFAULT_LIMIT, depth: int = 3) -> DiagonalScan:
    """Detect paths that are constant along the short diagonals.

    Certifies ``lambda(n) = lambda(n + e1 - e2)`` for every path when every
    vertex agrees on each diagonal pair of tile cells and every diagonal pair
    of ``T(d)`` lies in a single tile translate (checked for ``d`` up to
    ``(depth, depth)``).
    """
    cells = data.tile.cells
    pos = {c: i for i, c in enumerate(cells)}
    pairs = tuple((c, (c[0] + 1, c[1] - 1)) for c in cells if (c[0] + 1, c[1] - 1) in pos)
    if not pairs:
        return DiagonalScan(False, (), None, "tile has no diagonal cell pairs")
    g = build_graph(data, limit)
    for v in g.vertices:
        if any(v.values[pos[a]] != v.values[pos[b]] for a, b in pairs):
            return DiagonalScan(False, pairs, str(v), f"vertex {v} differs across a short diagonal")
    for d in itertools.product(range(depth + 1), repeat=2):
        region = region_of_degree(data.tile, d).cells
        for a in region:
            b = (a[0] + 1, a[1] - 1)
            if b in region and not any(
                (a[0] - k1, a[1] - k2) in pos and (b[0] - k1, b[1] - k2) in pos
                for k1 in range(d[0] + 1)
                for k2 in range(d[1] + 1)
            ):
                return DiagonalScan(False, pairs, None, f"diagonal pair at {a} in T{d} is not covered by one tile")
    return DiagonalScan(True, pairs, None, "every path is constant along the short diagonals")

"""Tiles, regions and basic data ``(T, q, t, w)``.

A tile is a finite hereditary subset of N^2 containing the origin.  Cells
are pairs ``(i1, i2)``; ``i1`` grows to the right and ``i2`` upwards, so a
tile written as row lengths ``[2, 1]`` is the sock ``{(0,0), (1,0), (0,1)}``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DomainError,
    EmptyRows,
    NegativeDegree,
    NotHereditary,
    NotInvertible,
    RowsNotDecreasing,
)

Cell = tuple[int, int]


@dataclass(frozen=True)
class TileMetrics:
    c1: int
    c2: int
    h: tuple[int, ...]  # top of each column
    wends: tuple[int, ...]  # right end of each row
    size: int


@dataclass(frozen=True)
class Tile:
    """Finite hereditary subset of N^2, cells kept in lexicographic order."""

    cells: tuple[Cell, ...]

    def __post_init__(self):
        cells = tuple(sorted(set((int(a), int(b)) for a, b in self.cells)))
        if not cells:
            raise NotHereditary("a tile must be non-empty")
        cellset = set(cells)
        for a, b in cells:
            if a < 0 or b < 0:
                raise NotHereditary(f"cell {(a, b)} has a negative coordinate")
            if (a > 0 and (a - 1, b) not in cellset) or (b > 0 and (a, b - 1) not in cellset):
                raise NotHereditary(f"cell {(a, b)} is not supported from below/left")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_set", frozenset(cells))

    @classmethod
    def from_cells(cls, cells: Iterable[Sequence[int]]) -> "Tile":
        cells = [tuple(c) for c in cells]
        if any(len(c) != 2 for c in cells):
            raise DomainError("only two-dimensional tiles are supported")
        return cls(tuple(cells))

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self._set

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def c1(self) -> int:
        return max(a for a, _ in self.cells)

    @property
    def c2(self) -> int:
        return max(b for _, b in self.cells)

    @property
    def corner1(self) -> Cell:
        return (self.c1, 0)

    @property
    def corner2(self) -> Cell:
        return (0, self.c2)

    def rows(self) -> tuple[int, ...]:
        return rows_of(self)

    def __str__(self) -> str:
        return "[" + ",".join(str(r) for r in self.rows()) + "]"


def parse_tile(rows: Sequence[int]) -> Tile:
    """Build a tile from its row lengths, bottom row (the longest) first."""
    rows = [int(r) for r in rows]
    if not rows:
        raise EmptyRows("a tile needs at least one row")
    if any(r <= 0 for r in rows):
        raise RowsNotDecreasing(f"row lengths must be positive: {rows}")
    if any(a < b for a, b in zip(rows, rows[1:])):
        raise RowsNotDecreasing(f"row lengths must be weakly decreasing: {rows}")
    return Tile(tuple((i1, i2) for i2, r in enumerate(rows) for i1 in range(r)))


def parse_tile_text(text: str) -> Tile:
    parts = [p for p in re.split(r"[\s,\[\]]+", text) if p]
    if not parts:
        raise EmptyRows("empty tile description")
    try:
        return parse_tile([int(p) for p in parts])
    except ValueError as exc:
        raise DomainError(f"bad tile description {text!r}") from exc


def rows_of(tile: Tile) -> tuple[int, ...]:
    return tuple(w + 1 for w in tile_metrics(tile).wends)


def tile_metrics(tile: Tile) -> TileMetrics:
    c1, c2 = tile.c1, tile.c2
    h = [0] * (c1 + 1)
    wends = [0] * (c2 + 1)
    for a, b in tile.cells:
        h[a] = max(h[a], b)
        wends[b] = max(wends[b], a)
    return TileMetrics(c1, c2, tuple(h), tuple(wends), len(tile))


def conjugate_tile(tile: Tile) -> Tile:
    return Tile(tuple((b, a) for a, b in tile.cells))


@dataclass(frozen=True)
class Region:
    cells: frozenset

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return tuple(cell) in self.cells

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)


def region_of_degree(tile: Tile, n: Sequence[int]) -> Region:
    """Union of the translates ``T + m`` for ``0 <= m <= n``."""
    n1, n2 = int(n[0]), int(n[1])
    if n1 < 0 or n2 < 0:
        raise NegativeDegree(f"degree {(n1, n2)} is not in N^2")
    # A hereditary tile makes the union a staircase: column x reaches up to
    # n2 + (top of the tile column max(0, x - n1)).
    metrics = tile_metrics(tile)
    cells = set()
    for x in range(metrics.c1 + n1 + 1):
        top = n2 + metrics.h[max(0, x - n1)]
        cells.update((x, y) for y in range(top + 1))
    return Region(frozenset(cells))


def translate(cells: Iterable[Cell], m: Sequence[int]) -> list[Cell]:
    return [(a + m[0], b + m[1]) for a, b in cells]


def mod_inverse(a: int, q: int) -> int:
    if q < 2:
        raise DomainError(f"modulus must be at least 2, got {q}")
    a %= q
    if math.gcd(a, q) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {q}")
    return pow(a, -1, q)


@dataclass(frozen=True)
class DataFlags:
    invertible_corners: bool
    three_invertible_corners: bool
    trace_shift_constant: int | None


@dataclass(frozen=True)
class BasicData:
    """The basic data ``(T, q, t, w)``.

    ``w`` is stored as a tuple aligned with ``tile.cells``; use
    :meth:`weight` to read it by cell.  Residues are reduced into ``0..q-1``.
    """

    tile: Tile
    q: int
    t: int = 0
    w: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"alphabet size q must be at least 2, got {self.q}")
        w = tuple(self.w) if self.w else (1,) * len(self.tile)
        if len(w) != len(self.tile):
            raise DomainError("rule must assign a value to every tile cell")
        object.__setattr__(self, "w", tuple(int(x) % self.q for x in w))
        object.__setattr__(self, "t", int(self.t) % self.q)

    @classmethod
    def make(cls, tile: Tile, q: int, t: int = 0, rule: Mapping[Cell, int] | None = None) -> "BasicData":
        """Build data from a cell -> value mapping; missing cells default to 1."""
        rule = dict(rule or {})
        extra = set(rule) - set(tile.cells)
        if extra:
            raise DomainError(f"rule mentions cells outside the tile: {sorted(extra)}")
        return cls(tile, q, t, tuple(rule.get(c, 1) for c in tile.cells))

    def weight(self, cell: Cell) -> int:
        return self.w[self.tile.cells.index(tuple(cell))]

    def rule(self) -> dict[Cell, int]:
        return dict(zip(self.tile.cells, self.w))

    def with_trace(self, t: int) -> "BasicData":
        return BasicData(self.tile, self.q, t, self.w)

    @property
    def flags(self) -> DataFlags:
        return validate_basic_data(self)


def _unit(a: int, q: int) -> bool:
    return math.gcd(a % q, q) == 1


def validate_basic_data(data: BasicData) -> DataFlags:
    tile, q = data.tile, data.q
    corners = _unit(data.weight(tile.corner1), q) and _unit(data.weight(tile.corner2), q)
    three = corners and _unit(data.weight((0, 0)), q) and tile.c1 >= 1 and tile.c2 >= 1
    total = sum(data.w) % q
    shift = next((c for c in range(q) if (c * total - data.t) % q == 0), None)
    return DataFlags(corners, three, shift)


_RULE_ITEM = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:\s*(-?\d+)")


def parse_rule(text: str) -> dict[Cell, int]:
    """Parse ``(i1,i2):v;(j1,j2):u`` into a mapping.  A leading ``w=`` is allowed."""
    text = text.strip()
    if text.startswith("w="):
        text = text[2:]
    rule = {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        match = _RULE_ITEM.fullmatch(item)
        if not match:
            raise DomainError(f"bad rule item {item!r}")
        a, b, v = (int(g) for g in match.groups())
        rule[(a, b)] = v
    return rule

"""K-groups of the 2-graph algebras and the structure checks around them.

``K0 = coker d1 + ker d2`` and ``K1 = ker d1 / img d2`` for the boundary
maps ``d1 = (1 - B^T | 1 - R^T)`` and ``d2 = (R^T - 1 ; 1 - B^T)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .errors import (
    BijectionFailure,
    DimensionMismatch,
    DomainError,
    HypothesisFailed,
    InfiniteK0,
    TheoremViolation,
)
from .graph import DEFAULT_LIMIT, VertexMatrices, build_graph, simplicity_hypotheses
from .tiles import BasicData, Tile, conjugate_tile, tile_metrics
from .zlin import (
    AbelianGroup,
    IntegerMatrix,
    chain_homology,
    cokernel_group,
    diagonalize,
    kernel_basis,
    quotient_group,
)


def build_boundary_maps(matrices: VertexMatrices) -> tuple[IntegerMatrix, IntegerMatrix]:
    B = np.asarray(matrices.B, dtype=np.int64)
    R = np.asarray(matrices.R, dtype=np.int64)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape != R.shape:
        raise DimensionMismatch(f"B {B.shape} and R {R.shape} must be square of equal size")
    eye = np.eye(B.shape[0], dtype=np.int64)
    d1 = np.hstack([eye - B.T, eye - R.T])
    d2 = np.vstack([R.T - eye, eye - B.T])
    return IntegerMatrix.from_array(d1), IntegerMatrix.from_array(d2)


def _kernel_rank(mat: np.ndarray) -> int:
    if mat.size == 0:
        return mat.shape[1] if mat.ndim == 2 else 0
    return mat.shape[1] - len(diagonalize(mat.tolist()))


@dataclass(frozen=True)
class UnitClass:
    coordinates: tuple[int, ...]  # in the Smith basis of coker d1
    order: int | None  # None when the class has infinite order
    generator: bool | None  # None when coker d1 is infinite

    def as_dict(self) -> dict:
        return {"coordinates": list(self.coordinates), "order": self.order, "generator": self.generator}


@dataclass
class KTheoryReport:
    data: BasicData
    vertices: int
    cokernel: AbelianGroup  # coker d1
    K1: AbelianGroup
    ker_delta2_rank: int
    unit_class: UnitClass
    hypotheses: dict = field(default_factory=dict)

    @property
    def K0(self) -> AbelianGroup:
        return self.cokernel + AbelianGroup(self.ker_delta2_rank)

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "K0": self.K0.as_dict() | {"text": str(self.K0)},
            "K1": self.K1.as_dict() | {"text": str(self.K1)},
            "coker_delta1": self.cokernel.as_dict(),
            "ker_delta2_rank": self.ker_delta2_rank,
            "unit_class": self.unit_class.as_dict(),
            "hypotheses": dict(self.hypotheses),
        }


def k0_k1_hypothesis(data: BasicData) -> bool:
    """Invertible corners, ``c1, c2 >= 1`` and a strictly taller first column or longer first row."""
    m = tile_metrics(data.tile)
    if not data.flags.invertible_corners or m.c1 < 1 or m.c2 < 1:
        return False
    return m.h[0] > m.h[1] or m.wends[0] > m.wends[1]


def compute_k_groups(
    data: BasicData,
    limit: int = DEFAULT_LIMIT,
    method: str = "fused",
    hypotheses: bool = True,
) -> KTheoryReport:
    """K-groups of ``C*(Lambda(T, q, t, w))`` with the class of the unit.

    ``method="fused"`` runs two eliminations sharing one basis change;
    ``method="explicit"`` takes a kernel basis ``H`` of ``d1``, solves
    ``H W = d2`` and reads ``K1`` off ``W``.  Both are exact.
    """
    g = build_graph(data, limit)
    N = len(g)
    d1, d2 = build_boundary_maps(VertexMatrices(g.B, g.R))
    ones = [1] * N
    if method == "fused":
        ch = chain_homology(d1, d2, marker=ones)
        cok, K1, kr = ch.cokernel, ch.homology, ch.kernel_rank
        unit = UnitClass(ch.marker_coordinates, ch.marker_order, None)
    elif method == "explicit":
        cok = cokernel_group(d1)
        K1 = quotient_group(kernel_basis(d1), d2)
        kr = kernel_basis(d2).cols
        ch = chain_homology(d1, IntegerMatrix.zeros(2 * N, 0), marker=ones)
        unit = UnitClass(ch.marker_coordinates, ch.marker_order, None)
    else:
        raise DomainError(f"unknown method {method!r}")
    if cok.is_finite:
        unit = UnitClass(unit.coordinates, unit.order, unit.order == cok.order)
    report = KTheoryReport(data, N, cok, K1, kr, unit)
    if k0_k1_hypothesis(data):
        if kr != 0:
            raise TheoremViolation(f"ker d2 has rank {kr} although the first column or row is strictly larger")
        if report.K0.order != K1.order:
            raise TheoremViolation(f"|K0| = {report.K0.order} but |K1| = {K1.order}")
    if hypotheses:
        report.hypotheses = hypothesis_flags(data, limit)
    return report


def hypothesis_flags(data: BasicData, limit: int = DEFAULT_LIMIT) -> dict:
    flags = data.flags
    simp = simplicity_hypotheses(data, limit)
    return {
        "invertible_corners": flags.invertible_corners,
        "three_invertible_corners": flags.three_invertible_corners,
        "c1_positive": simp.c1_positive,
        "c2_positive": simp.c2_positive,
        "trace_zero_or_shiftable": simp.trace_zero_or_shiftable,
        "aperiodic": simp.three_invertible_corners and simp.trace_zero_or_shiftable,
        "simple": simp.holds,
        "purely_infinite": simp.holds and simp.loop is not None,
        "k0_equals_k1_hypothesis": k0_k1_hypothesis(data),
    }


def unit_class_is_generator(report: KTheoryReport) -> bool:
    if not report.K0.is_finite:
        raise InfiniteK0(f"K0 = {report.K0} is infinite")
    return report.unit_class.order == report.cokernel.order


def k0_equals_k1_check(report: KTheoryReport, data: BasicData | None = None) -> bool:
    data = report.data if data is None else data
    if not k0_k1_hypothesis(data):
        raise HypothesisFailed("needs invertible corners, c1, c2 >= 1 and h0 > h1 or w0 > w1")
    if not (report.K0.is_finite and report.K1.is_finite):
        raise HypothesisFailed("both groups must be finite")
    return report.K0.order == report.K1.order


@dataclass(frozen=True)
class GcdFormulaRecord:
    predicted: int
    observed: int | None
    agrees: bool


def gcd_formula_scan(report: KTheoryReport) -> GcdFormulaRecord:
    """Compare ``|K0|`` with ``gcd(q^c2 - 1, q^c1 - 1)``; observational only."""
    tile, q = report.data.tile, report.data.q
    predicted = math.gcd(q**tile.c2 - 1, q**tile.c1 - 1)
    observed = report.K0.order
    return GcdFormulaRecord(predicted, observed, observed == predicted)


# ---------------------------------------------------------------- dual reduction


def _trimmed_tile(tile: Tile) -> tuple[Tile, Tile]:
    """``S = T & (T - e1)`` and ``S+ = S + {(0, h1 + 1)}``."""
    m = tile_metrics(tile)
    if m.c1 < 1:
        raise HypothesisFailed("the tile has a single column")
    s_cells = tuple((a - 1, b) for a, b in tile.cells if a >= 1)
    return Tile(s_cells), Tile(s_cells + ((0, m.h[1] + 1),))


@dataclass(frozen=True)
class DualStep:
    tile: Tile  # the tile whose blue graph is reduced
    smaller: Tile  # S+
    multiplier: int
    classes: int  # vertices of the quotient graph F
    dual_vertices: int
    dual_edges: int
    verified: bool


@dataclass(frozen=True)
class ReductionChain:
    tiles: tuple[Tile, ...]
    multipliers: tuple[int, ...]
    steps: tuple[DualStep, ...] = ()
    final_vertices: int | None = None
    final_complete: bool | None = None

    def as_dict(self) -> dict:
        return {
            "tiles": [list(t.rows()) for t in self.tiles],
            "multipliers": list(self.multipliers),
            "verified_steps": sum(1 for s in self.steps if s.verified),
            "final_vertices": self.final_vertices,
            "final_complete": self.final_complete,
        }


def verify_dual_step(data: BasicData, limit: int = DEFAULT_LIMIT) -> DualStep:
    """Check that the blue graph of ``data`` is the dual of ``r * (blue graph of S+)``.

    The isomorphism is built explicitly.  Vertices of the dual are triples
    ``(class1, class2, i)``; ``phi`` sends one to the ``i``-th vertex that
    agrees with the first class on ``S`` and with the second on ``S + e1``.
    ``psi`` sends a class to its extension by ``-(sum over S)`` at the new
    top cell, giving a vertex of ``S+`` with rule 1 and trace 0.
    """
    tile = data.tile
    m = tile_metrics(tile)
    if m.h[0] <= m.h[1]:
        raise HypothesisFailed(f"first column (top {m.h[0]}) is not taller than the second (top {m.h[1]})")
    S, Splus = _trimmed_tile(tile)
    r_b = data.q ** (m.h[0] - m.h[1] - 1)
    g = build_graph(data, limit)
    cells = tile.cells
    pos = {c: k for k, c in enumerate(cells)}
    on_s = [pos[c] for c in S.cells]
    on_s_shift = [pos[(a + 1, b)] for a, b in S.cells]

    # classes under agreement on S
    cls_of = [tuple(v.values[k] for k in on_s) for v in g.vertices]
    classes = sorted(set(cls_of))
    cidx = {c: i for i, c in enumerate(classes)}

    # F: edges (c1, c2) whenever c1(i) = c2(i - e1) on S & (S + e1)
    s_pos = {c: k for k, c in enumerate(S.cells)}
    overlap = [(s_pos[c], s_pos[(c[0] - 1, c[1])]) for c in S.cells if (c[0] - 1, c[1]) in s_pos]
    f_edges = [
        (a, b)
        for a, b in product(range(len(classes)), repeat=2)
        if all(classes[a][i] == classes[b][j] for i, j in overlap)
    ]

    # phi0 on dual vertices
    by_pair: dict = {}
    for v in g.vertices:
        key = (cidx[tuple(v.values[k] for k in on_s)], cidx.get(tuple(v.values[k] for k in on_s_shift)))
        by_pair.setdefault(key, []).append(v.index)
    phi0 = {}
    for a, b in f_edges:
        us = by_pair.get((a, b), [])
        if len(us) != r_b:
            raise BijectionFailure(f"{len(us)} vertices over the class pair {(a, b)}, expected {r_b}")
        for i, u in enumerate(us):
            phi0[(a, b, i)] = u
    if len(set(phi0.values())) != len(g) or len(phi0) != len(g):
        raise BijectionFailure("phi0 is not a bijection onto the vertices")

    # phi1: dual edge (e, f) with s(e) = r(f) goes from f to e
    heads: dict = {}
    for key in phi0:
        heads.setdefault(key[0], []).append(key)
    images = set()
    for e in phi0:
        for f in heads.get(e[1], ()):
            rng, src = phi0[e], phi0[f]
            if not g.B[rng, src]:
                raise BijectionFailure(f"dual edge {f} -> {e} has no blue edge {src} -> {rng}")
            images.add((rng, src))
    blue = int(g.B.sum())
    if len(images) != blue:
        raise BijectionFailure(f"phi1 hits {len(images)} of {blue} blue edges")

    # psi: F -> blue graph of S+ with trace 0 and rule 1
    small = BasicData(Splus, data.q)
    h = build_graph(small, limit)
    def plus(c):
        vals = dict(zip(S.cells, c))
        vals[(0, m.h[1] + 1)] = -sum(c) % data.q
        return h.index[tuple(vals[x] for x in Splus.cells)]

    psi0 = [plus(c) for c in classes]
    if sorted(psi0) != list(range(len(h))):
        raise BijectionFailure("psi0 is not a bijection onto the vertices of S+")
    psi1 = {(psi0[a], psi0[b]) for a, b in f_edges}
    if len(psi1) != len(f_edges) or any(not h.B[x, y] for x, y in psi1) or len(psi1) != int(h.B.sum()):
        raise BijectionFailure("psi1 is not a bijection onto the blue edges of S+")
    return DualStep(tile, Splus, r_b, len(classes), len(phi0), len(images), True)


def reduction_chain(data: BasicData, verify: bool = True, limit: int = DEFAULT_LIMIT) -> ReductionChain:
    """Successive one-column-smaller tiles whose scaled blue graphs dualise to the previous one."""
    m = tile_metrics(data.tile)
    if m.c1 < 1:
        raise HypothesisFailed("needs at least two columns")
    if m.h[0] <= m.h[1]:
        raise HypothesisFailed(f"h0 = {m.h[0]} is not larger than h1 = {m.h[1]}")
    tiles, mults, steps = [], [], []
    current = data
    for i in range(1, m.c1 + 1):
        _, nxt = _trimmed_tile(current.tile)
        cm = tile_metrics(current.tile)
        mult = data.q ** (cm.h[0] - cm.h[1] - 1)
        expected = data.q ** (m.h[0] - m.h[1] - 1) if i == 1 else data.q ** (m.h[i - 1] - m.h[i])
        if mult != expected:
            raise TheoremViolation(f"multiplier {mult} at step {i}, expected {expected}")
        if verify:
            steps.append(verify_dual_step(current, limit))
        tiles.append(nxt)
        mults.append(mult)
        current = BasicData(nxt, data.q)
    final_vertices = final_complete = None
    if verify:
        last = build_graph(current, limit)
        final_vertices = len(last)
        final_complete = bool(np.all(last.B == 1))
        if not final_complete:
            raise TheoremViolation("the one-column tile does not give a complete blue graph")
    return ReductionChain(tuple(tiles), tuple(mults), tuple(steps), final_vertices, final_complete)


def conjugate_data(data: BasicData) -> BasicData:
    """Swap the coordinates of tile and rule; blue and red trade places."""
    tile = conjugate_tile(data.tile)
    rule = {(b, a): x for (a, b), x in data.rule().items()}
    return BasicData.make(tile, data.q, data.t, rule)


@dataclass(frozen=True)
class KernelReport:
    ker_one_minus_bt: int
    ker_one_minus_rt: int
    ker_delta2: int
    chain_kernels: tuple[int, ...]  # ranks of ker(1 - r_i B_i^T) along the chain used
    holds: bool


def _chain_kernel_ranks(data: BasicData, limit: int) -> tuple[int, ...]:
    out = []
    chain = reduction_chain(data, verify=False)
    for tile, r in zip(chain.tiles, chain.multipliers):
        Bi = build_graph(BasicData(tile, data.q), limit).B.astype(np.int64)
        out.append(_kernel_rank(np.eye(len(Bi), dtype=np.int64) - r * Bi.T))
    return tuple(out)


def kernel_triviality_check(data: BasicData, limit: int = DEFAULT_LIMIT) -> KernelReport:
    """Ranks of ``ker(1 - B^T)``, ``ker(1 - R^T)`` and ``ker d2``, asserted trivial when they must be."""
    m = tile_metrics(data.tile)
    if not data.flags.invertible_corners:
        raise HypothesisFailed("needs invertible corners")
    if m.c1 < 1 or m.c2 < 1:
        raise HypothesisFailed("needs c1, c2 >= 1")
    g = build_graph(data, limit)
    N = len(g)
    eye = np.eye(N, dtype=np.int64)
    kb = _kernel_rank(eye - g.B.T.astype(np.int64))
    kr = _kernel_rank(eye - g.R.T.astype(np.int64))
    d2 = np.vstack([g.R.T - eye, eye - g.B.T]).astype(np.int64)
    k2 = _kernel_rank(d2)
    chain: tuple[int, ...] = ()
    if m.h[0] > m.h[1]:
        chain = _chain_kernel_ranks(data, limit)
        if kb or k2 or any(chain):
            raise TheoremViolation(f"kernels not trivial with h0 > h1: 1-B^T {kb}, d2 {k2}, chain {chain}")
    if m.wends[0] > m.wends[1]:
        chain = chain or _chain_kernel_ranks(conjugate_data(data), limit)
        if kr or k2 or any(chain):
            raise TheoremViolation(f"kernels not trivial with w0 > w1: 1-R^T {kr}, d2 {k2}, chain {chain}")
    return KernelReport(kb, kr, k2, chain, True)


def scaled_kernel_rank(B: np.ndarray, n: int) -> int:
    """Rank of ``ker(1 - n B^T)``; zero whenever ``n > 1``."""
    B = np.asarray(B, dtype=np.int64)
    return _kernel_rank(np.eye(len(B), dtype=np.int64) - n * B.T)


def k_groups_table(cells: Sequence[tuple[Sequence[int], int]], limit: int = DEFAULT_LIMIT) -> list[tuple[int, int]]:
    """``(|K0|, |K1|)`` for each ``(rows, q)``; trace 0 and rule 1."""
    from .tiles import parse_tile

    out = []
    for rows, q in cells:
        rep = compute_k_groups(BasicData(parse_tile(rows), q), limit=limit, hypotheses=False)
        out.append((rep.K0.order, rep.K1.order))
    return out

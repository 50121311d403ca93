import itertools
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from tilegraph.errors import DimensionMismatch, HypothesisFailed, InfiniteK0
from tilegraph.graph import VertexMatrices, build_graph, trace_shift_isomorphism, vertex_matrices
from tilegraph.ktheory import (
    build_boundary_maps,
    compute_k_groups,
    conjugate_data,
    gcd_formula_scan,
    k0_equals_k1_check,
    kernel_triviality_check,
    reduction_chain,
    scaled_kernel_rank,
    unit_class_is_generator,
    verify_dual_step,
)
from tilegraph.table_data import expected_order
from tilegraph.tiles import BasicData, parse_tile, tile_metrics


def kt(rows, q, **kw):
    return compute_k_groups(BasicData(parse_tile(rows), q, **kw), hypotheses=False)


def maximal_minor_gcd(m):
    """gcd of the maximal minors; the order of coker m when m has full row rank."""
    rows, cols = m.shape
    g = 0
    for cs in itertools.combinations(range(cols), rows):
        g = math.gcd(g, int(round(np.linalg.det(m[:, cs]))))
    return g


@st.composite
def small_data(draw, max_cells=5):
    rows = [draw(st.integers(1, 3))]
    while sum(rows) < max_cells and draw(st.booleans()):
        nxt = draw(st.integers(1, rows[-1]))
        if sum(rows) + nxt > max_cells:
            break
        rows.append(nxt)
    tile = parse_tile(rows)
    q = draw(st.sampled_from([2, 3]))
    w = draw(st.lists(st.integers(1, q - 1), min_size=len(tile), max_size=len(tile)))
    t = draw(st.integers(0, q - 1))
    return BasicData(tile, q, t, tuple(w))


def test_boundary_maps_identity():
    eye = np.eye(3, dtype=int)
    d1, d2 = build_boundary_maps(VertexMatrices(eye, eye))
    assert d1.shape == (3, 6) and d2.shape == (6, 3)
    assert d1.is_zero() and d2.is_zero()


def test_boundary_maps_shape_checked():
    with pytest.raises(DimensionMismatch):
        build_boundary_maps(VertexMatrices(np.eye(3, dtype=int), np.eye(2, dtype=int)))
    with pytest.raises(DimensionMismatch):
        build_boundary_maps(VertexMatrices(np.ones((2, 3), dtype=int), np.ones((2, 3), dtype=int)))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_data())
def test_boundary_composite_vanishes(data):
    d1, d2 = build_boundary_maps(vertex_matrices(data))
    assert (d1 @ d2).is_zero()


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_data())
def test_fused_matches_explicit(data):
    a = compute_k_groups(data, method="fused", hypotheses=False)
    b = compute_k_groups(data, method="explicit", hypotheses=False)
    assert (a.K0, a.K1, a.unit_class.order) == (b.K0, b.K1, b.unit_class.order)


@pytest.mark.parametrize("rows, q", [([2, 1], 2), ([3], 2), ([1, 1, 1], 2), ([2], 3), ([2, 1], 3)])
def test_cokernel_against_minors(rows, q):
    data = BasicData(parse_tile(rows), q)
    d1, _ = build_boundary_maps(vertex_matrices(data))
    rep = compute_k_groups(data, hypotheses=False)
    arr = d1.to_array()
    if np.linalg.matrix_rank(arr) == arr.shape[0]:
        assert rep.cokernel.order == maximal_minor_gcd(arr)
    else:
        assert not rep.cokernel.is_finite


def test_ledrappier_trivial(ledrappier):
    rep = compute_k_groups(ledrappier)
    assert rep.vertices == 4
    assert rep.K0.is_trivial and rep.K1.is_trivial


@pytest.mark.parametrize("rows, q", [([3], 2), ([4], 3), ([3, 1, 1], 3), ([2, 1], 5)])
def test_published_orders(rows, q):
    rep = kt(rows, q)
    assert rep.K0.order == rep.K1.order == expected_order(rows, q)


def test_single_cell_is_torus():
    rep = kt([1], 2)
    assert str(rep.K0) == "Z^2" and str(rep.K1) == "Z^2"
    with pytest.raises(InfiniteK0):
        unit_class_is_generator(rep)


def test_unit_class_generates():
    rep = kt([3, 1, 1], 3)
    assert rep.K0.is_cyclic and unit_class_is_generator(rep)
    assert rep.unit_class.generator is True


def test_reduction_chain_four_three_one_one():
    chain = reduction_chain(BasicData(parse_tile([4, 3, 1, 1]), 2))
    assert [list(t.rows()) for t in chain.tiles] == [[3, 2, 1], [2, 1, 1], [1, 1]]
    assert list(chain.multipliers) == [2, 1, 2]
    assert all(s.verified for s in chain.steps)
    assert chain.final_vertices == 2 and chain.final_complete


def test_sock_reduces_to_complete_graph(sock):
    chain = reduction_chain(BasicData(sock, 3))
    assert [list(t.rows()) for t in chain.tiles] == [[1, 1]]
    assert chain.multipliers == (1,)
    assert chain.final_vertices == 3 and chain.final_complete


def test_chain_needs_taller_first_column():
    with pytest.raises(HypothesisFailed):
        reduction_chain(BasicData(parse_tile([2, 2]), 2))
    with pytest.raises(HypothesisFailed):
        reduction_chain(BasicData(parse_tile([1, 1]), 2))
    with pytest.raises(HypothesisFailed):
        verify_dual_step(BasicData(parse_tile([2, 2]), 2))


@pytest.mark.parametrize("rows", [[4, 3, 1, 1], [3, 2, 1], [5, 1, 1, 1], [2, 1, 1]])
@pytest.mark.parametrize("q", [2, 3])
def test_multipliers_telescope(rows, q):
    tile = parse_tile(rows)
    h = tile_metrics(tile).h
    chain = reduction_chain(BasicData(tile, q), verify=False)
    assert math.prod(chain.multipliers) == q ** (h[0] - h[tile.c1] - 1)
    last = build_graph(BasicData(chain.tiles[-1], q))
    assert len(last) == q ** (h[tile.c1] + 1)


@pytest.mark.parametrize("rows, q", [([2, 1], 2), ([3, 2, 1], 2), ([3, 1, 1], 3), ([2, 2, 1], 2), ([4, 2], 2)])
def test_kernel_triviality(rows, q):
    rep = kernel_triviality_check(BasicData(parse_tile(rows), q))
    assert rep.holds and rep.ker_delta2 == 0


def test_kernel_triviality_hypotheses():
    with pytest.raises(HypothesisFailed):
        kernel_triviality_check(BasicData(parse_tile([3]), 2))


@pytest.mark.parametrize("n", [2, 3])
def test_scaled_kernel(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        size = int(rng.integers(1, 9))
        assert scaled_kernel_rank(rng.integers(0, 2, (size, size)), n) == 0
    assert scaled_kernel_rank(np.eye(3, dtype=int), 1) == 3


def test_k0_equals_k1_check():
    assert k0_equals_k1_check(kt([3, 2, 1], 4))
    assert k0_equals_k1_check(kt([3, 1, 1], 3))
    with pytest.raises(HypothesisFailed):
        k0_equals_k1_check(kt([5], 3))


@pytest.mark.parametrize("rows, q, predicted", [([2, 1], 5, 4), ([3], 2, 3), ([3, 1, 1], 3, 8)])
def test_gcd_formula(rows, q, predicted):
    rec = gcd_formula_scan(kt(rows, q))
    assert rec.predicted == predicted
    assert rec.agrees and rec.observed == predicted


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_data())
def test_conjugation_invariance(data):
    a = compute_k_groups(data, hypotheses=False)
    b = compute_k_groups(conjugate_data(data), hypotheses=False)
    assert (a.K0, a.K1) == (b.K0, b.K1)


@pytest.mark.parametrize("rows, q, t", [([2, 1], 2, 1), ([3, 1], 3, 2), ([3, 1], 3, 1)])
def test_trace_shift_invariance(rows, q, t):
    data = BasicData(parse_tile(rows), q, t)
    if data.flags.trace_shift_constant is None:
        pytest.skip("no shift constant")
    trace_shift_isomorphism(data, data.flags.trace_shift_constant)
    a = compute_k_groups(data, hypotheses=False)
    b = compute_k_groups(data.with_trace(0), hypotheses=False)
    assert (a.K0, a.K1) == (b.K0, b.K1)


def test_report_flags(sock):
    rep = compute_k_groups(BasicData(sock, 2))
    flags = rep.hypotheses
    assert flags["simple"] and flags["aperiodic"] and flags["k0_equals_k1_hypothesis"]
    d = rep.as_dict()
    assert d["K0"]["text"] == "0" and d["vertices"] == 4

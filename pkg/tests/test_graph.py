import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from tilegraph.errors import (
    CornersNotInvertible,
    DegreeOutOfRange,
    DomainError,
    EnumerationTooLarge,
    InvalidPath,
    NoWitnessUpToBound,
    SourceRangeMismatch,
)
from tilegraph.graph import (
    aperiodicity_witness,
    build_graph,
    check_square_bijection,
    compose_paths,
    connect_vertices,
    diagonal_steps,
    factorize_path,
    fill_forced,
    path_from_rows,
    segment,
    separates,
    simplicity_hypotheses,
    trace_shift_isomorphism,
)
from tilegraph.tiles import BasicData, parse_tile, region_of_degree

EXPATH_ROWS = ["00110", "01011", "11101", "0011"]


def brute_vertices(data):
    return sorted(
        v
        for v in itertools.product(range(data.q), repeat=len(data.tile))
        if sum(w * x for w, x in zip(data.w, v)) % data.q == data.t
    )


def brute_edge_matrix(data, shift):
    """Count fillings of T(shift) whose two tile translates are vertices."""
    verts = brute_vertices(data)
    idx = {v: i for i, v in enumerate(verts)}
    region = sorted(region_of_degree(data.tile, shift).cells)
    M = np.zeros((len(verts), len(verts)), dtype=int)
    for fill in itertools.product(range(data.q), repeat=len(region)):
        g = dict(zip(region, fill))
        r = tuple(g[c] for c in data.tile.cells)
        s = tuple(g[(a + shift[0], b + shift[1])] for a, b in data.tile.cells)
        if r in idx and s in idx:
            M[idx[r], idx[s]] += 1
    return M


def data_strategy(max_cells=5, qs=(2, 3)):
    @st.composite
    def build(draw):
        rows = sorted(draw(st.lists(st.integers(1, 3), min_size=1, max_size=3)), reverse=True)
        tile = parse_tile(rows)
        if len(tile) > max_cells:
            tile = parse_tile([2, 1])
        q = draw(st.sampled_from(qs))
        units = [x for x in range(1, q) if np.gcd(x, q) == 1]
        rule = {c: draw(st.integers(0, q - 1)) for c in tile.cells}
        rule[tile.corner1] = draw(st.sampled_from(units))
        rule[tile.corner2] = draw(st.sampled_from(units))
        t = draw(st.integers(0, q - 1))
        return BasicData.make(tile, q, t, rule)

    return build()


def test_ledrappier_vertices(ledrappier):
    g = build_graph(ledrappier)
    assert [str(v) for v in g.vertices] == ["000", "011", "101", "110"]


def test_ledrappier_matrices(ledrappier):
    g = build_graph(ledrappier)
    assert g.B.tolist() == [[1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0]]
    assert g.R.tolist() == [[1, 1, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0], [0, 0, 1, 1]]
    assert (g.B @ g.R == 1).all()


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(data_strategy())
def test_skeleton_against_brute_force(data):
    g = build_graph(data)
    assert [v.values for v in g.vertices] == brute_vertices(data)
    assert np.array_equal(g.B, brute_edge_matrix(data, (1, 0)))
    assert np.array_equal(g.R, brute_edge_matrix(data, (0, 1)))


@settings(max_examples=25, deadline=None)
@given(data_strategy(max_cells=6, qs=(2, 3, 4)))
def test_skeleton_identities(data):
    g = build_graph(data)
    B, R = g.B, g.R
    c1, c2 = data.tile.c1, data.tile.c2
    assert len(g) == data.q ** (len(data.tile) - 1)
    assert np.array_equal(B @ R, R @ B)
    assert (B.sum(0) == data.q**c2).all() and (B.sum(1) == data.q**c2).all()
    assert (R.sum(0) == data.q**c1).all() and (R.sum(1) == data.q**c1).all()


@settings(max_examples=15, deadline=None)
@given(data_strategy(max_cells=4))
def test_squares_match_both_orders(data):
    assert check_square_bijection(data).holds


def test_square_failure_without_invertible_corner(sock):
    bad = BasicData.make(sock, 2, 0, {(0, 1): 0})
    assert not check_square_bijection(bad).holds
    assert check_square_bijection(BasicData.make(sock, 2, 0, {(0, 0): 0})).holds


def test_corners_required(sock):
    with pytest.raises(CornersNotInvertible):
        build_graph(BasicData.make(sock, 4, 0, {(1, 0): 2}))


def test_enumeration_limit():
    with pytest.raises(EnumerationTooLarge):
        build_graph(BasicData(parse_tile([8]), 3), limit=100)


def test_expath(ledrappier):
    g = build_graph(ledrappier)
    lam = path_from_rows(ledrappier, (3, 2), EXPATH_ROWS)
    assert str(g.source_of(lam)) == "011" and str(g.range_of(lam)) == "000"
    for m in itertools.product(range(4), range(3)):
        mu, nu = factorize_path(lam, m)
        assert mu.degree == m
        assert compose_paths(ledrappier, mu, nu, graph=g) == lam


def test_invalid_path(ledrappier):
    rows = EXPATH_ROWS[:]
    rows[0] = "10110"
    with pytest.raises(InvalidPath):
        path_from_rows(ledrappier, (3, 2), rows)


def test_segment_errors(ledrappier):
    lam = path_from_rows(ledrappier, (3, 2), EXPATH_ROWS)
    with pytest.raises(DegreeOutOfRange):
        segment(lam, (2, 0), (1, 0))
    with pytest.raises(DegreeOutOfRange):
        factorize_path(lam, (4, 0))


def test_compose_mismatch(ledrappier):
    g = build_graph(ledrappier)
    e = g.edges_from_range(1, "000")[0]
    other = g.vertex_path("110")
    assert str(g.source_of(e)) != "110"
    with pytest.raises(SourceRangeMismatch):
        compose_paths(ledrappier, e, other, graph=g)


@settings(max_examples=20, deadline=None)
@given(data_strategy(max_cells=4), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_composition_matches_forced_fill(data, a, b, c, d, pick):
    """Composition agrees with an order-free propagation of forced cells."""
    g = build_graph(data)
    v = g.vertices[pick.draw(st.integers(0, len(g) - 1))]
    mus = g.paths_from(v, (a, b))
    mu = mus[pick.draw(st.integers(0, len(mus) - 1))]
    nus = g.paths_from(g.source_of(mu), (c, d))
    nu = nus[pick.draw(st.integers(0, len(nus) - 1))]
    lam = compose_paths(data, mu, nu, graph=g)
    known = mu.as_dict()
    known.update({(x + a, y + b): val for (x, y), val in nu.items()})
    assert fill_forced(data, lam.degree, known) == lam.as_dict()
    assert factorize_path(lam, (a, b)) == (mu, nu)


def test_connect_all_pairs(ledrappier):
    g = build_graph(ledrappier)
    k = diagonal_steps(ledrappier.tile)
    for v, u in itertools.product(g.vertices, repeat=2):
        lam = connect_vertices(ledrappier, v, u)
        assert lam.degree == (k, k)
        assert g.range_of(lam) == v and g.source_of(lam) == u


def test_connect_larger_tile():
    data = BasicData(parse_tile([3, 2]), 2)
    g = build_graph(data)
    assert diagonal_steps(data.tile) == 2
    for v, u in [(0, 5), (7, 3), (15, 15)]:
        lam = connect_vertices(data, v, u)
        assert (g.range_of(lam).index, g.source_of(lam).index) == (v, u)


def test_constructive_witness_incomparable(ledrappier):
    rep = aperiodicity_witness(ledrappier, "000", (1, 0), (0, 1))
    assert rep.method == "constructive" and rep.status == "witness"
    assert separates(rep.witness, (1, 0), (0, 1), ledrappier.tile)


def test_search_witness_agrees(ledrappier):
    rep = aperiodicity_witness(ledrappier, "101", (2, 0), (0, 1), constructive=False)
    assert rep.method == "search"
    assert separates(rep.witness, (2, 0), (0, 1), ledrappier.tile)


def test_periodic_sock(sock_w0_zero):
    with pytest.raises(NoWitnessUpToBound) as info:
        aperiodicity_witness(sock_w0_zero, 0, (1, 0), (0, 1))
    assert info.value.report.status == "periodic"


def test_witness_needs_distinct_degrees(ledrappier):
    with pytest.raises(DomainError):
        aperiodicity_witness(ledrappier, 0, (1, 1), (1, 1))


def test_trace_shift(sock):
    rep = trace_shift_isomorphism(BasicData(sock, 2, 1), 1)
    assert (rep.vertices, rep.blue_edges, rep.red_edges) == (4, 8, 8)


def test_simplicity(ledrappier):
    rep = simplicity_hypotheses(ledrappier)
    assert rep.holds
    g = build_graph(ledrappier)
    assert g.range_of(rep.loop) == g.source_of(rep.loop)
    assert g.range_of(rep.entrance) == g.range_of(rep.loop) and rep.entrance != segment(rep.loop, (0, 0), (1, 0))
    one_row = simplicity_hypotheses(BasicData(parse_tile([3]), 2))
    assert not one_row.holds and not one_row.c2_positive

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tilegraph.errors import TraceNonZero
from tilegraph.graph import build_graph
from tilegraph.subshift import (
    WindowConfiguration,
    diagonal_periodicity_scan,
    enumerate_windows,
    path_to_window,
    path_window_correspondence,
    restrict_window,
    sample_window,
    shift_window,
    window_is_valid,
    window_to_path,
)
from tilegraph.tiles import BasicData, parse_tile, region_of_degree


def brute_window_count(data, extent):
    cells = sorted(region_of_degree(data.tile, extent).cells)
    count = 0
    for fill in itertools.product(range(data.q), repeat=len(cells)):
        conf = WindowConfiguration((0, 0), extent, tuple(zip(cells, fill)))
        count += window_is_valid(data, conf)
    return count


def test_zero_window_valid(ledrappier):
    cells = region_of_degree(ledrappier.tile, (2, 2)).cells
    assert window_is_valid(ledrappier, WindowConfiguration((0, 0), (2, 2), tuple((c, 0) for c in sorted(cells))))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3), st.integers(0, 3))
def test_samples_are_valid(seed, a, b):
    data = BasicData(parse_tile([2, 1]), 3)
    w = sample_window(data, (a, b), seed)
    assert window_is_valid(data, w)
    assert len(w.values) == len(region_of_degree(data.tile, (a, b)))


def test_sample_reproducible(ledrappier):
    assert sample_window(ledrappier, (3, 2), 11) == sample_window(ledrappier, (3, 2), 11)
    assert len(sample_window(ledrappier, (3, 2), 11).values) == 19


def test_sample_rejects_trace(sock):
    with pytest.raises(TraceNonZero):
        sample_window(BasicData(sock, 2, 1), (1, 1), 0)


def test_window_count_brute_force(ledrappier):
    assert brute_window_count(ledrappier, (1, 1)) == 16
    assert len(list(enumerate_windows(ledrappier, (1, 1)))) == 16


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_action(a, b, c, d):
    data = BasicData(parse_tile([2, 1]), 2)
    w = sample_window(data, (2, 1), 5)
    assert shift_window(w, (0, 0)) == w
    assert shift_window(shift_window(w, (a, b)), (c, d)) == shift_window(w, (a + c, b + d))
    assert shift_window(shift_window(w, (a, b)), (-a, -b)) == w
    assert window_is_valid(data, shift_window(w, (a, b)))


def test_shift_then_restrict(ledrappier):
    w = sample_window(ledrappier, (3, 2), 2)
    moved = shift_window(w, (1, 0))
    grid = w.as_dict()
    kept = [(x - 1, y) for x, y in grid if x >= 1]
    assert restrict_window(moved, kept) == {(x - 1, y): grid[(x, y)] for x, y in grid if x >= 1}


@pytest.mark.parametrize(
    "rows, q, n, count",
    [([2, 1], 2, (0, 0), 4), ([2, 1], 2, (1, 1), 16), ([3], 2, (2, 0), 4)],
)
def test_correspondence_counts(rows, q, n, count):
    rep = path_window_correspondence(BasicData(parse_tile(rows), q), n)
    assert rep.holds and rep.paths == rep.windows == count


def test_h_and_k_inverse(ledrappier):
    g = build_graph(ledrappier)
    for lam in g.all_paths((1, 2)):
        assert window_to_path(ledrappier, path_to_window(ledrappier, lam)) == lam


def test_diagonal_scan(ledrappier, sock_w0_zero):
    cert = diagonal_periodicity_scan(sock_w0_zero)
    assert cert.certified
    led = diagonal_periodicity_scan(ledrappier)
    g = build_graph(ledrappier)
    # digits follow the cell order (0,0), (0,1), (1,0)
    differing = {str(v) for v in g.vertices if v.values[1] != v.values[2]}
    assert differing == {"101", "110"}
    assert not led.certified and led.violating_vertex in differing
    single = diagonal_periodicity_scan(BasicData(parse_tile([1]), 2))
    assert not single.certified and single.pairs == ()

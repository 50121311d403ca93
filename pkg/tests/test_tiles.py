import itertools

import pytest
from hypothesis import given, strategies as st

from tilegraph.errors import (
    DomainError,
    EmptyRows,
    NegativeDegree,
    NotHereditary,
    NotInvertible,
    RowsNotDecreasing,
)
from tilegraph.tiles import (
    BasicData,
    Tile,
    conjugate_tile,
    mod_inverse,
    parse_rule,
    parse_tile,
    parse_tile_text,
    region_of_degree,
    rows_of,
    tile_metrics,
    translate,
)

partitions = st.lists(st.integers(1, 5), min_size=1, max_size=4).map(lambda xs: sorted(xs, reverse=True))


def test_sock_cells(sock):
    assert set(sock.cells) == {(0, 0), (1, 0), (0, 1)}
    assert sock.cells == ((0, 0), (0, 1), (1, 0))


def test_single_cell():
    assert parse_tile([1]).cells == ((0, 0),)


def test_metrics_of_staircase():
    m = tile_metrics(parse_tile([4, 3, 1, 1]))
    # brute-force column tops and row ends straight from the cell list
    cells = parse_tile([4, 3, 1, 1]).cells
    tops = tuple(max(b for a, b in cells if a == i) for i in range(4))
    assert (m.c1, m.c2, m.h) == (3, 3, (3, 1, 1, 0))
    assert m.h == tops
    assert m.wends == (3, 2, 0, 0)
    assert m.size == 9


@pytest.mark.parametrize(
    "rows, exc",
    [([], EmptyRows), ([1, 2], RowsNotDecreasing), ([2, 0], RowsNotDecreasing)],
)
def test_parse_errors(rows, exc):
    with pytest.raises(exc):
        parse_tile(rows)


def test_not_hereditary():
    with pytest.raises(NotHereditary):
        Tile(((0, 0), (2, 0)))
    with pytest.raises(DomainError):
        Tile.from_cells([(0, 0, 0)])


def test_text_forms():
    assert parse_tile_text("[3,1,1]") == parse_tile_text("3 1 1") == parse_tile([3, 1, 1])
    assert str(parse_tile([3, 1, 1])) == "[3,1,1]"


@given(partitions)
def test_rows_round_trip(rows):
    assert list(rows_of(parse_tile(rows))) == rows


@given(partitions)
def test_conjugate_is_involution(rows):
    t = parse_tile(rows)
    assert conjugate_tile(conjugate_tile(t)) == t
    assert tile_metrics(conjugate_tile(t)).h == tile_metrics(t).wends


@given(partitions, st.integers(0, 3), st.integers(0, 3))
def test_region_is_union_of_translates(rows, n1, n2):
    t = parse_tile(rows)
    union = set()
    for m in itertools.product(range(n1 + 1), range(n2 + 1)):
        union.update(translate(t.cells, m))
    assert region_of_degree(t, (n1, n2)).cells == union


def test_region_negative():
    with pytest.raises(NegativeDegree):
        region_of_degree(parse_tile([1]), (-1, 0))


def test_sock_region_size():
    assert len(region_of_degree(parse_tile([2, 1]), (3, 2))) == 19


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)


def test_basic_data_flags(sock):
    assert BasicData(sock, 2).flags.three_invertible_corners
    d = BasicData.make(sock, 4, 0, {(1, 0): 2})
    assert not d.flags.invertible_corners
    d = BasicData.make(sock, 2, 0, {(0, 0): 0})
    assert d.flags.invertible_corners and not d.flags.three_invertible_corners
    assert not BasicData(parse_tile([3]), 2).flags.three_invertible_corners


def test_trace_shift_constant(sock):
    # 3 * c = 1 mod 2 -> c = 1
    assert BasicData(sock, 2, 1).flags.trace_shift_constant == 1
    # 3 * c = 1 mod 3 has no solution
    assert BasicData(sock, 3, 1).flags.trace_shift_constant is None


def test_rule_parsing(sock):
    assert parse_rule("w=(1,0):2;(0,1):3") == {(1, 0): 2, (0, 1): 3}
    with pytest.raises(DomainError):
        parse_rule("(1,0)=2")
    with pytest.raises(DomainError):
        BasicData.make(sock, 2, 0, {(5, 5): 1})


def test_residues_reduced(sock):
    d = BasicData(sock, 3, 4, (4, -1, 7))
    assert d.t == 1 and d.w == (1, 2, 1)
    with pytest.raises(DomainError):
        BasicData(sock, 1)

import pytest

from tilegraph.tiles import BasicData, parse_tile


@pytest.fixture
def sock():
    return parse_tile([2, 1])


@pytest.fixture
def ledrappier(sock):
    return BasicData(sock, 2)


@pytest.fixture
def sock_w0_zero(sock):
    return BasicData.make(sock, 2, 0, {(0, 0): 0})

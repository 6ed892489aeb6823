import pytest

from lozenge.geometry import build_polygon
from lozenge.presets import PRESETS


def poly(name):
    return build_polygon(PRESETS[name])


@pytest.fixture(scope="session")
def hex111():
    return poly("hex111")


@pytest.fixture(scope="session")
def hex222():
    return poly("hex222")


@pytest.fixture(scope="session")
def small_two_cut():
    return poly("two-cut-small")


@pytest.fixture(scope="session")
def multicut():
    return poly("multicut-g1")


@pytest.fixture(scope="session")
def fig4():
    return poly("fig4")

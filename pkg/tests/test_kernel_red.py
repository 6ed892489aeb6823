import pytest

from lozenge._numbers import Q
from lozenge.enumeration import Measure, red_correlation
from lozenge.kernel_red import FORMS, K_red, K_red_correlation, K_red_reference, PointOutsideError, red_kernel
from lozenge.geometry import build_polygon
from lozenge.presets import PRESETS


def _points(P):
    return [(m, x) for m in range(P.N + 1) for x in P.level_range(m)]


@pytest.mark.parametrize("name", ["hex222", "two-cut-small", "multicut-g1"])
def test_all_forms_agree(name):
    P = build_polygon(PRESETS[name])
    pts = _points(P)
    ks = [red_kernel(P, f) for f in FORMS]
    for a in pts[::3]:
        for b in pts[::2]:
            vals = {k(*a, *b) for k in ks}
            assert len(vals) == 1, (a, b, vals)


@pytest.mark.parametrize("form", ["R", "L"])
def test_literal_reference_matches_fast_path(small_two_cut, form):
    P = small_two_cut
    pts = _points(P)
    for a, b in [(pts[1], pts[4]), (pts[5], pts[5]), (pts[-3], pts[2]), (pts[7], pts[-1])]:
        assert K_red_reference(P, *a, *b, form=form) == K_red(P, *a, *b, form=form)


def test_top_level_is_delta(hex222):
    P = hex222
    # the top row is frozen at the boundary positions
    for x in P.x:
        for y in P.x:
            assert K_red(P, P.N, x, P.N, y) == (1 if x == y else 0)


def test_frozen_values(hex111, hex222, small_two_cut):
    assert K_red(hex111, 0, 0, 1, -1) == Q(1, 2)
    assert K_red(hex222, 2, 0, 2, 0) == Q(3, 10)
    assert K_red(small_two_cut, 3, 0, 3, 0) == Q(14, 51)


def test_determinants_match_enumeration(hex222):
    u = Measure.uniform()
    for pts in [[(2, 0), (1, -1)], [(1, 0), (3, -1), (2, -2)], [(1, -1), (4, -3)]]:
        assert K_red_correlation(hex222, pts) == red_correlation(hex222, u, pts)


def test_outside_point_raises(hex222):
    with pytest.raises(PointOutsideError):
        K_red(hex222, 1, 40, 1, 0)
    with pytest.raises(ValueError):
        red_kernel(hex222, "nope")

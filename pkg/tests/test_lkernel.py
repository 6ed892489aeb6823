from lozenge._numbers import Q
from lozenge.enumeration import blue_correlation, Measure, two_cut_blue_profile
from lozenge.lkernel import L_blue, L_blue_correlation, blue_points, limit_trend, scaled_two_cut, strip_trace, verify_blue_kernel
from lozenge.geometry import build_polygon


def test_blue_kernel_matches_enumeration(hex222):
    res = verify_blue_kernel(hex222, max_points=2)
    assert res["checked"] > 0 and res["max_discrepancy"] == 0


def test_blue_kernel_on_two_cut(small_two_cut):
    res = verify_blue_kernel(small_two_cut, max_points=2)
    assert res["max_discrepancy"] == 0


def test_uniform_kernel_does_not_fit_q_measure(hex222):
    res = verify_blue_kernel(hex222, 1, Measure.qmeasure(Q(1, 2)))
    assert res["max_discrepancy"] > 0


def test_frozen_blue_value(small_two_cut):
    assert L_blue(small_two_cut, (3, 0), (3, 0)) == Q(25, 102)
    assert L_blue_correlation(small_two_cut, [(3, 0)]) == blue_correlation(small_two_cut, Measure.uniform(), [(3, 0)])


def test_forms_agree(small_two_cut):
    pts = blue_points(small_two_cut)[::3]
    for a in pts:
        for b in pts:
            assert L_blue(small_two_cut, a, b, "L") == L_blue(small_two_cut, a, b, "R")


def test_strip_trace_is_the_profile(small_two_cut):
    prof = two_cut_blue_profile(small_two_cut)
    for eta, v in prof.items():
        assert strip_trace(small_two_cut, eta) == v


def test_scaled_family_is_valid():
    for d in (2, 4):
        spec, a = scaled_two_cut(d, 1, 2)
        P = build_polygon(spec)
        assert P.r == 1 and P.two_cut.rho == 2 and a > 0


def test_limit_trend_rows():
    rows = limit_trend([2], 1, 2, [(1, 0, 1, 0)])
    assert rows[0]["d"] == 2 and rows[0]["ratio"] > 0

import pytest

from lozenge._numbers import Q
from lozenge.enumeration import Measure, enumerate_tilings, normalizer, red_correlation, weight
from lozenge.kernel_q import ROUTES, K_q, K_q_correlation, karlin_mcgregor_weight, q_to_1_probe, structure_report
from lozenge.kernel_red import K_red


@pytest.mark.parametrize("q", [Q(1, 2), Q(3, 4)])
def test_routes_agree(small_two_cut, q):
    P = small_two_cut
    pts = [(m, x) for m in range(P.N + 1) for x in P.level_range(m)][::4]
    for a in pts:
        for b in pts:
            vals = {K_q(P, *a, *b, q, route) for route in ROUTES}
            assert len(vals) == 1


def test_structure_report(multicut):
    assert all(structure_report(multicut, Q(2, 5)).values())


def test_frozen_q_values(hex111, hex222):
    assert K_q(hex111, 0, 0, 1, -1, Q(1, 2)) == Q(2, 3)
    assert K_q(hex222, 2, 0, 2, 0, Q(1, 2)) == Q(58, 155)


def test_q_determinant_matches_enumeration(hex222):
    q = Q(1, 3)
    m = Measure.qmeasure(q)
    pts = [(2, 0), (1, -1)]
    assert K_q_correlation(hex222, pts, q) == red_correlation(hex222, m, pts)


def test_karlin_mcgregor_weight_is_the_q_weight(hex222):
    q = Q(1, 2)
    m = Measure.qmeasure(q)
    norm = normalizer(hex222, m)
    for t in list(enumerate_tilings(hex222))[:6]:
        assert karlin_mcgregor_weight(hex222, t, q) == weight(hex222, t, m, norm)


def test_q_to_one_error_shrinks(small_two_cut):
    rows = q_to_1_probe(small_two_cut, [((3, 0), (3, 0)), ((2, 0), (3, 0))])
    for row in rows:
        assert row["errors"][-1] < row["errors"][0]


def test_q_equal_one_rejected_or_uniform(hex111):
    try:
        v = K_q(hex111, 0, 0, 1, -1, 1)
    except ValueError:
        return
    assert v == K_red(hex111, 0, 0, 1, -1)

import pytest

from lozenge._numbers import Q
from lozenge.enumeration import (Measure, blue_counts_per_eta, blue_correlation, correlation_table,
                                 enumerate_tilings, from_skew_tableau, is_horizontal_strip, is_interlacing,
                                 normalizer, red_correlation, to_skew_tableau, two_cut_blue_profile,
                                 volume, weight)
from lozenge.geometry import PolygonSpec, build_polygon


def test_counts(hex111, hex222, small_two_cut, multicut):
    assert sum(1 for _ in enumerate_tilings(hex111)) == 2
    assert sum(1 for _ in enumerate_tilings(hex222)) == 20
    # frozen from the Jacobi-Trudi oracle
    assert sum(1 for _ in enumerate_tilings(small_two_cut)) == 5100
    assert sum(1 for _ in enumerate_tilings(multicut)) == 64


def test_enumeration_by_hexagon_product():
    P = build_polygon(PolygonSpec.hexagon(2, 3, 4))
    assert sum(1 for _ in enumerate_tilings(P)) == 490


def test_every_tiling_interlaces_with_d_plus_k_dots(small_two_cut):
    P = small_two_cut
    for t in enumerate_tilings(P):
        assert is_interlacing(P, t)
        assert [len(lev) for lev in t] == [P.d + k for k in range(P.N + 1)]


def test_interlacing_iff_horizontal_strips(hex222):
    P = hex222
    for t in enumerate_tilings(P):
        rows = to_skew_tableau(t)
        assert from_skew_tableau(rows, [v + i + 1 for i, v in enumerate(t[0])], P.N) == t
        for k in range(1, P.N + 1):
            n = len(t[-1])
            nu = lambda lev: [(lev[i] + i + 1) if i < len(lev) else 0 for i in range(n)]
            assert is_horizontal_strip(nu(t[k]), nu(t[k - 1]))


def test_broken_interlacing_is_rejected(hex222):
    t = next(enumerate_tilings(hex222))
    bad = list(t)
    bad[2] = (bad[2][0] + 5,) + tuple(bad[2][1:])
    assert not is_interlacing(hex222, tuple(bad))


def test_uniform_weights_sum_to_one(multicut):
    m = Measure.uniform()
    norm = normalizer(multicut, m)
    assert sum(weight(multicut, t, m, norm) for t in enumerate_tilings(multicut)) == 1


@pytest.mark.parametrize("q", [Q(1, 2), Q(2, 3)])
def test_q_weights_sum_to_one(hex222, q):
    m = Measure.qmeasure(q)
    norm = normalizer(hex222, m)
    assert sum(weight(hex222, t, m, norm) for t in enumerate_tilings(hex222)) == 1


def test_q_equal_one_is_uniform():
    assert Measure.qmeasure(1) == Measure.uniform()
    with pytest.raises(ValueError):
        Measure.qmeasure(Q(3, 2))


def test_volume_counts_boxes(hex111):
    vols = sorted(volume(t) for t in enumerate_tilings(hex111))
    assert vols[1] - vols[0] == 1


def test_frozen_correlations(hex222, small_two_cut):
    u = Measure.uniform()
    assert red_correlation(hex222, u, [(2, 0)]) == Q(3, 10)
    assert red_correlation(hex222, u, [(2, 0), (1, -1)]) == Q(1, 10)
    assert red_correlation(hex222, Measure.qmeasure(Q(1, 2)), [(2, 0)]) == Q(58, 155)
    assert red_correlation(small_two_cut, u, [(3, 0)]) == Q(14, 51)
    assert blue_correlation(small_two_cut, u, [(3, 0)]) == Q(25, 102)


def test_correlation_table_matches_direct_sums(hex222):
    m = Measure.uniform()
    table = correlation_table(hex222, m, "red", 2)
    for key in [((1, -1),), ((1, -1), (2, 0)), ((3, -2), (4, 1))]:
        assert table.get(key, Q(0)) == red_correlation(hex222, m, list(key))


def test_blue_profile_is_tiling_independent(small_two_cut):
    P = small_two_cut
    prof = {e: v for e, v in two_cut_blue_profile(P).items() if v}
    for t in enumerate_tilings(P):
        assert blue_counts_per_eta(P, t) == prof


def test_blue_profile_has_r_dots_across_the_strip(fig4):
    prof = two_cut_blue_profile(fig4)
    tc = fig4.two_cut
    assert all(prof[e] == fig4.r for e in range(tc.m1, tc.m1 + tc.rho + 1))
    assert max(prof.values()) == tc.b


def test_empty_tableau_when_shapes_coincide():
    P = build_polygon(PolygonSpec.hexagon(1, 1, 1))
    t = next(enumerate_tilings(P))
    assert sum(len(r) for r in to_skew_tableau((t[0], t[0]))) == 0

import pytest

from lozenge._numbers import Q, parse_rational, frac_str, rising
from lozenge.identities import EG_EXAMPLE_N, check_gap_examples, sigma_poly
from lozenge.symfunc import (ComplementarySym, SymPoly, calP, calP_exp, compute_Eg, count_by_jacobi_trudi,
                             h_geom, h_ones, macmahon, qpoch, skew_schur_ones)


def test_h_ones_small_values():
    assert h_ones(3, 2) == 4
    assert h_ones(0, 0) == 1
    assert h_ones(2, 0) == 0
    assert h_ones(-1, 3) == 0
    assert h_ones(2, 3) == 6


def test_h_geom_at_one_is_h_ones():
    for r in range(0, 5):
        for n in range(1, 5):
            assert h_geom(r, 0, n - 1, Q(1)) == h_ones(r, n)


def test_h_geom_counts_monomials():
    # h_2(q, q^2) = q^2 + q^3 + q^4
    q = Q(1, 3)
    assert h_geom(2, 1, 2, q) == q ** 2 + q ** 3 + q ** 4


def test_qpoch_and_calP():
    q = Q(1, 2)
    assert qpoch(q, q, 2) == (1 - q) * (1 - q * q)
    assert calP(2, Q(0), q) == 1 / ((1 - q) * (1 - q * q))
    assert calP_exp(3, 2, Q(1)) == Q(rising(3, 3), 6)


@pytest.mark.parametrize("abc, count", [((1, 1, 1), 2), ((2, 2, 2), 20), ((3, 3, 3), 980), ((2, 3, 4), 490)])
def test_macmahon(abc, count):
    assert macmahon(*abc) == count


def test_skew_schur_empty_shape():
    assert skew_schur_ones((2, 1), (2, 1), 3) == 1


def test_jacobi_trudi_matches_macmahon(hex222):
    assert count_by_jacobi_trudi(hex222.x, hex222.y, hex222.N) == 20


def test_printed_gap_polynomials():
    count, bad = check_gap_examples()
    assert count == 2 and bad == []


def test_gap_polynomial_leading_term():
    E = compute_Eg((6, 5, 4, 2), EG_EXAMPLE_N)
    assert E == sigma_poly(4, {4: 1, 3: -1, 2: -1, 1: 11, 0: -49})
    assert compute_Eg((4, 3, 2), 6) == SymPoly.const(3, 1)  # contiguous: no gap


def test_sympoly_evaluation_and_power_sums():
    S = sigma_poly(3, {3: 2, 1: -1, 0: 5})
    xs = [Q(1), Q(2), Q(-3)]
    assert S.evaluate(xs) == 2 * (1 * 2 * -3) - (1 + 2 - 3) + 5
    assert S.to_power_sums().to_sigma() == S


def test_complementary_transform():
    # S(x1, x2) on two of the points of L equals S~ on the other one
    L = [Q(-3), Q(-4), Q(-5)]
    S = sigma_poly(2, {2: 1, 1: 3, 0: -2})
    T = ComplementarySym(S, L, 1)
    assert T([Q(-5)]) == S.evaluate([Q(-3), Q(-4)])
    assert T([Q(-3)]) == S.evaluate([Q(-4), Q(-5)])


def test_rational_helpers():
    assert parse_rational("2/3") == Q(2, 3)
    assert frac_str(Q(4, 2)) == "2/1"
    assert Q("1/2") == Q(1, 2)

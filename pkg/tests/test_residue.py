import pytest

from lozenge._numbers import Q
from lozenge.polynomial import UniPoly
from lozenge.residue import (ContourError, ContourSpec, RationalFunction, gamma_tau_points,
                             multi_residue_sum, residue_sum)


def test_simple_and_double_poles():
    f = RationalFunction(UniPoly([1]), [Q(1), Q(2)])
    assert f.residue(1) == -1 and f.residue(2) == 1
    g = RationalFunction(UniPoly([0, 0, 1]), {Q(1): 2})  # z^2/(z-1)^2
    assert g.residue(1) == 2
    assert g.residue(5) == 0


def test_all_poles_equals_minus_residue_at_infinity():
    f = RationalFunction(UniPoly([3, 0, 1, 2]), [Q(1, 2), Q(-3), Q(-3), Q(7, 3)])
    assert residue_sum(f, ContourSpec.all_poles()) == -f.residue_at_infinity()


def test_polynomial_numerator_of_high_degree():
    # z^3/(z-1): all finite residues 1, residue at infinity -1
    f = RationalFunction(UniPoly([0, 0, 0, 1]), [Q(1)])
    assert residue_sum(f, ContourSpec.all_poles()) == 1


def test_x_plus_N_contour_takes_integer_poles_to_the_right():
    f = RationalFunction(UniPoly([1]), [Q(-1), Q(0), Q(1), Q(1, 2)])
    assert residue_sum(f, ContourSpec.x_plus_N(0)) == f.residue(0) + f.residue(1)


def test_gamma_tau_sizes():
    N, n, y1 = 6, 2, 3
    # tau >= 0: empty
    assert gamma_tau_points(2, n, y1, N) == []
    # y1 - N <= y: exactly -tau points
    y = 0
    tau = (y + n) - (y1 + 1)
    assert len(gamma_tau_points(y, n, y1, N)) == -tau
    # y1 - N >= y: N - n + 1 points
    assert len(gamma_tau_points(-5, n, y1, N)) == N - n + 1


def test_unknown_contour():
    with pytest.raises(ContourError):
        residue_sum(RationalFunction(UniPoly([1]), [Q(0)]), ContourSpec("nowhere"))


def test_multi_residue_rejects_double_poles():
    f = RationalFunction(UniPoly([1]), {Q(0): 2})
    with pytest.raises(ContourError):
        multi_residue_sum(f, [[Q(0)]], lambda t: 1)

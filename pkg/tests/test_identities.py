import pytest

from lozenge._numbers import Q
from lozenge.identities import (ALL_CHECKS, EG_EXAMPLES, check_gap_examples, check_h_integral, h_integral,
                                sigma_poly)
from lozenge.symfunc import h_ones


@pytest.mark.parametrize("name", ["vandermonde_ratio", "removed_elementary", "gap_factorization"])
def test_quick_checks(name):
    count, failures = ALL_CHECKS[name](instances=10)
    assert count == 10 and not failures


def test_h_integral_small():
    count, failures = check_h_integral(max_N=4)
    assert count > 0 and not failures


def test_h_integral_single_values():
    # complete homogeneous h_k(1^n) with k = y - y_j
    assert h_integral(2, 0, 3, 5, 1) == h_ones(2, 3) == 6
    assert h_integral(-1, 0, 2, 4, 0) == 0


def test_gap_examples_frozen():
    count, failures = check_gap_examples()
    assert count == len(EG_EXAMPLES) and not failures


def test_sigma_poly_is_a_polynomial():
    p = sigma_poly(2, {0: Q(1), 1: Q(-1, 2)})
    assert p.evaluate([Q(1), Q(3)]) == 1 - Q(1, 2) * 4

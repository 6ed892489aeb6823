import numpy as np
import pytest

from lozenge.tacnode import (QuadConfig, QuadratureError, TacParams, L_dtac, heaviside, involution_residual,
                             support_violation, theta, theta_minus, theta_plus, theta_tensor)

PARAMS = [TacParams(0, 0, 0.0), TacParams(1, 2, 0.0), TacParams(1, 2, 1.0), TacParams(2, 1, 0.5)]
GRID = [(-1, -0.5, 0, 0.3), (0, 0.0, 1, 0.0), (1, 0.7, -1, -0.2), (2, 1.1, 2, 0.4), (3, -1.0, -2, 1.0)]


@pytest.mark.parametrize("p", PARAMS)
def test_involution(p):
    for g in GRID:
        res = involution_residual(*g, p)
        assert max(res.values()) < 1e-10


@pytest.mark.parametrize("p", PARAMS)
def test_support(p):
    for g in GRID:
        assert support_violation(*g, p) < 1e-10


@pytest.mark.parametrize("p", PARAMS[:3])
def test_determinant_route_matches_tensor_sum(p):
    V, Z = 0.1 + 0.05j, 0.5 + 0.3j
    assert abs(theta(p, V, Z) - theta_tensor(p, V, Z, "theta")) < 1e-10
    assert abs(theta_plus(p, V, Z) - theta_tensor(p, V, Z, "plus")) < 1e-10
    if p.r + 1 <= 2:
        Zm = 0.05 - 0.1j
        assert abs(theta_minus(p, V, Zm) - theta_tensor(p, V, Zm, "minus")) < 1e-10


def test_step_refinement_is_stable():
    p = TacParams(1, 2, 0.0)
    fine = QuadConfig(h=1 / 128, n_circle=128)
    for g in GRID:
        assert abs(L_dtac(*g, p) - L_dtac(*g, p, fine)) < 1e-8


def test_heaviside_convention():
    assert heaviside(1, 0.0) == 1 and heaviside(3, 2.0) == 2
    assert heaviside(0, 1.0) == 0 and heaviside(2, -0.1) == 0


def test_bad_configs():
    with pytest.raises(ValueError):
        TacParams(-1, 0)
    with pytest.raises(ValueError):
        QuadConfig(a=0.2, eps=0.3)
    with pytest.raises(ValueError):
        theta_tensor(TacParams(3, 0), 0.1, 0.5)


def test_imaginary_part_guard():
    with pytest.raises(QuadratureError):
        L_dtac(0, 0.0, 1, 0.0, TacParams(1, 2, 0.0), QuadConfig(imag_tol=-1.0))

from fractions import Fraction

import pytest

from lozenge.geometry import (PolygonSpec, PolygonSpecError, blue_to_lattice, build_polygon,
                              from_oblique, lattice_to_blue, load_polygon, to_oblique)


def test_fig4_derived_data(fig4):
    assert (fig4.N, fig4.d, fig4.r, fig4.g) == (10, 2, 1, 0)
    assert (fig4.two_cut.rho, fig4.two_cut.sigma) == (2, 4)
    assert fig4.L == (-10, -11, -12)
    assert fig4.C == (-3, -4)
    assert len(fig4.R) == 7


def test_fig4_touches_boundary(fig4):
    # the reference shape has sigma = 4 > c - d bound; recorded, not rejected
    assert fig4.two_cut.strips_separated is False


def test_hexagon_has_no_cut(hex222):
    assert hex222.d == 0 and hex222.L == () and hex222.R == hex222.x
    assert hex222.x == (1, 0, -3, -4)
    assert hex222.y == (-1, -2, -3, -4)


def test_points_interlace_with_top(multicut):
    assert multicut.y[: multicut.d] == (1, -1)
    assert multicut.g == 1
    assert all(xi >= yi for xi, yi in zip(multicut.x, multicut.y))


@pytest.mark.parametrize("obj, msg", [
    ({"lower_cuts": [1]}, "missing field 'lower_gaps'"),
    ({"lower_cuts": [1], "lower_gaps": [2, 3], "upper_cuts": [1], "upper_gaps": [3, 2],
      "b0": 2, "bu": 3, "d0": 3, "extra": 1}, "unknown field 'extra'"),
    ({"lower_cuts": [1], "lower_gaps": [2, "3"], "upper_cuts": [1], "upper_gaps": [3, 2],
      "b0": 2, "bu": 3, "d0": 3}, "field 'lower_gaps'"),
    ({"lower_cuts": [1], "lower_gaps": [2, 3], "upper_cuts": [1], "upper_gaps": [3, 2],
      "b0": True, "bu": 3, "d0": 3}, "field 'b0'"),
])
def test_spec_field_errors_name_the_field(obj, msg):
    with pytest.raises(PolygonSpecError, match=msg):
        PolygonSpec.from_dict(obj)


def test_malformed_json():
    with pytest.raises(PolygonSpecError, match="malformed JSON"):
        load_polygon('{"lower_cuts": [1,')


@pytest.mark.parametrize("spec, msg", [
    (PolygonSpec((1,), (2,), (), (2,), 1, 1, 1), "one more lower gap"),
    (PolygonSpec((), (2,), (), (3,), 2, 2, 2), "sum of lower gaps"),
    (PolygonSpec((), (2,), (), (2,), 2, 1, 2), "d \\+ N"),
    (PolygonSpec((), (2,), (), (2,), 0, 0, 0), "at least 1"),
    (PolygonSpec((0,), (2, 2), (), (4,), 2, 1, 2), "positive"),
])
def test_constraint_errors(spec, msg):
    with pytest.raises(PolygonSpecError, match=msg):
        build_polygon(spec)


def test_spec_json_round_trip(fig4):
    again = load_polygon(__import__("json").dumps(fig4.spec.to_dict()))
    assert again == fig4


def test_oblique_coordinates_round_trip():
    for n in range(-3, 4):
        for x in range(-3, 4):
            eta, xi = to_oblique(n, x)
            assert from_oblique(eta, xi) == (n, x)
    assert to_oblique(0, 0) == (Fraction(1, 2), Fraction(-1, 2))


def test_blue_lattice_round_trip():
    for ell in range(1, 6):
        for x in range(-4, 5):
            assert blue_to_lattice(*lattice_to_blue(ell, x)) == (ell, x)
    with pytest.raises(ValueError, match="odd"):
        blue_to_lattice(2, 2)


def test_level_range_sizes(small_two_cut):
    P = small_two_cut
    for k in range(P.N + 1):
        assert len(P.level_range(k)) == P.M + P.d + k

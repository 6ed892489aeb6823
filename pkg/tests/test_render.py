from pathlib import Path

import pytest

from lozenge.enumeration import enumerate_tilings
from lozenge.render import RenderStyle, render_svg, tile_counts, tiles
from lozenge.sampler import minimal_tiling

GOLDEN = Path(__file__).parent / "golden"


def _area(vs):
    return abs(sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]))) / 2


@pytest.mark.parametrize("i", [0, 1])
def test_hex111_matches_golden(hex111, i):
    t = sorted(enumerate_tilings(hex111))[i]
    assert render_svg(hex111, t) == (GOLDEN / f"hex111_{i}.svg").read_text()


def test_render_is_deterministic(small_two_cut):
    t = minimal_tiling(small_two_cut)
    assert render_svg(small_two_cut, t) == render_svg(small_two_cut, t)


def test_tile_counts_and_area_do_not_depend_on_tiling(small_two_cut):
    P = small_two_cut
    seen = set()
    for t in list(enumerate_tilings(P))[::97]:
        ts = tiles(P, t)
        c = tile_counts(P, t)
        assert c["red"] == sum(P.d + k for k in range(P.N + 1))
        seen.add((c["red"], c["blue"], c["green"], sum(_area(list(v)) for _, _, v in ts)))
    assert len(seen) == 1


def test_tiles_do_not_share_centers(hex222):
    for t in enumerate_tilings(hex222):
        centers = [c for _, c, _ in tiles(hex222, t)]
        assert len(centers) == len(set(centers))


def test_red_dots_per_line(small_two_cut):
    P = small_two_cut
    svg = render_svg(P, minimal_tiling(P), RenderStyle(blue_dots=False))
    red_block = svg.split('class="red-dots"')[1].split("</g>")[0]
    assert red_block.count("<circle") == sum(P.d + k for k in range(P.N + 1))


def test_style_switches(hex111):
    t = minimal_tiling(hex111)
    svg = render_svg(hex111, t, RenderStyle(red_dots=False, blue_dots=False, title="a<b"))
    assert "<circle" not in svg
    assert "a&lt;b" in svg
    assert svg.endswith("</svg>\n")


def test_strip_guides_are_drawn(fig4):
    svg = render_svg(fig4, minimal_tiling(fig4), RenderStyle(strips=True))
    assert svg.count("<line") == 4

import pytest

from helpers import SHAPES, fixture_polygons, nonthin_plus
from rguard.instance_gen import gen_tree_polygon
from rguard.max_rectangles import classify_degenerate, enumerate_max_rects
from rguard.oracle import oracle_max_rects
from rguard.pixelation import build_pixelation
from rguard.polygon_core import OrthoPolygon, Rect


def halves(mr_list):
    return {(tuple(v // 2 for v in m.rect.as_tuple()), m.degenerate)
            for m in mr_list}


def test_unit_square():
    px = build_pixelation(OrthoPolygon(SHAPES["unit"]))
    assert halves(enumerate_max_rects(px, True)) == {((0, 0, 1, 1), False)}


def test_l_shape_two_rects_no_degenerate():
    px = build_pixelation(OrthoPolygon(SHAPES["L"]))
    got = halves(enumerate_max_rects(px, True))
    assert got == {((0, 0, 2, 1), False), ((0, 0, 1, 2), False)}


def test_u_shape_three_rects():
    px = build_pixelation(OrthoPolygon(SHAPES["U"]))
    got = halves(enumerate_max_rects(px, False))
    assert got == {((0, 0, 3, 1), False), ((0, 0, 1, 3), False),
                   ((2, 0, 3, 3), False)}


def test_oracle_equivalence_fixtures():
    for poly in fixture_polygons() + [nonthin_plus()]:
        px = build_pixelation(poly)
        for allow in (False, True):
            mine = {(m.rect.as_tuple(), m.degenerate)
                    for m in enumerate_max_rects(px, allow)}
            ref = {(r.as_tuple(), d) for r, d in oracle_max_rects(px)
                   if allow or not d}
            assert mine == ref, (poly, allow)


def test_oracle_equivalence_generated():
    for seed in range(6):
        px = build_pixelation(gen_tree_polygon(10 + 4 * seed, seed))
        for allow in (False, True):
            mine = {(m.rect.as_tuple(), m.degenerate)
                    for m in enumerate_max_rects(px, allow)}
            ref = {(r.as_tuple(), d) for r, d in oracle_max_rects(px)
                   if allow or not d}
            assert mine == ref


def test_no_containment_between_results():
    for poly in fixture_polygons():
        px = build_pixelation(poly)
        rs = enumerate_max_rects(px, True)
        for a in rs:
            for b in rs:
                if a.id != b.id:
                    assert not a.rect.contains_rect(b.rect)


def test_degenerate_segment_found_in_dent2():
    px = build_pixelation(OrthoPolygon(SHAPES["dent2"]))
    degs = [m for m in enumerate_max_rects(px, True) if m.degenerate]
    assert [m.rect.as_tuple() for m in degs] == [(2, 0, 2, 10)]
    assert degs[0].pixel_ids == tuple(range(px.pixel_count))
    assert not [m for m in enumerate_max_rects(px, False) if m.degenerate]


def test_classify_degenerate():
    pxL = build_pixelation(OrthoPolygon(SHAPES["L"]))
    assert not classify_degenerate(pxL, Rect(2, 0, 2, 2))  # fattens into the arm
    px2 = build_pixelation(OrthoPolygon(SHAPES["dent2"]))
    assert classify_degenerate(px2, Rect(2, 0, 2, 10))
    with pytest.raises(ValueError):
        classify_degenerate(pxL, Rect(0, 0, 2, 2))  # positive area rejected
    with pytest.raises(ValueError):
        classify_degenerate(pxL, Rect(3, 2, 3, 6))  # leaves the polygon


def test_per_pixel_incidence_bound_thin():
    for seed in range(8):
        px = build_pixelation(gen_tree_polygon(30, seed))
        counts = [0] * px.pixel_count
        for m in enumerate_max_rects(px, False):
            for pid in m.pixel_ids:
                counts[pid] += 1
        assert min(counts) >= 1
        assert max(counts) <= 6


def test_pixel_ids_closed_intersection():
    px = build_pixelation(OrthoPolygon(SHAPES["plus"]))
    rects = enumerate_max_rects(px, False)
    # both bars of the plus touch every pixel (closed intersection)
    for m in rects:
        assert m.pixel_ids == tuple(range(5))

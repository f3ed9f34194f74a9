import pytest

from helpers import SHAPES
from rguard.guard_model import GuardTask
from rguard.instance_gen import gen_tree_polygon
from rguard.oracle import (OracleSizeError, has_induced_c4, oracle_max_rects,
                           oracle_min_guards, oracle_vertex_cover)
from rguard.pixelation import build_pixelation
from rguard.polygon_core import OrthoPolygon, translate_polygon


def test_min_guards_fixture_values():
    assert oracle_min_guards(OrthoPolygon(SHAPES["unit"]), GuardTask.make()).size == 1
    assert oracle_min_guards(OrthoPolygon(SHAPES["L"]), GuardTask.make()).size == 1
    assert oracle_min_guards(OrthoPolygon(SHAPES["U"]), GuardTask.make()).size == 2


def test_min_guards_translation_invariant():
    for seed in range(4):
        poly = gen_tree_polygon(12, seed)
        moved = translate_polygon(poly, 13, -9)
        for deg in (False, True):
            task = GuardTask.make(allow_degenerate=deg)
            assert oracle_min_guards(poly, task).size == \
                oracle_min_guards(moved, task).size


def test_min_guards_infeasible_witness():
    task = GuardTask.make(guard_modes=("pixels",), guard_pixels=())
    res = oracle_min_guards(OrthoPolygon(SHAPES["L"]), task)
    assert res.status == "infeasible" and res.witness is not None


def test_size_guard():
    poly = gen_tree_polygon(45, 0)
    with pytest.raises(OracleSizeError):
        oracle_min_guards(poly, GuardTask.make(), max_pixels=40)
    assert oracle_min_guards(poly, GuardTask.make(), max_pixels=60).size >= 1


def test_max_rects_counts():
    assert len(oracle_max_rects(OrthoPolygon(SHAPES["unit"]))) == 1
    L = [r for r, d in oracle_max_rects(OrthoPolygon(SHAPES["L"])) if not d]
    assert len(L) == 2
    U = [r for r, d in oracle_max_rects(OrthoPolygon(SHAPES["U"])) if not d]
    assert len(U) == 3


def test_vertex_cover_values():
    assert oracle_vertex_cover(3, [(0, 1), (1, 2), (0, 2)]) == 2
    assert oracle_vertex_cover(4, [(0, 1), (1, 2), (2, 3)]) == 2
    assert oracle_vertex_cover(2, [(0, 1)]) == 1
    assert oracle_vertex_cover(5, []) == 0
    with pytest.raises(OracleSizeError):
        oracle_vertex_cover(20, [(0, 1)])


def test_has_induced_c4():
    square = [[1, 3], [0, 2], [1, 3], [0, 2]]
    assert has_induced_c4(square)
    diag = [[1, 2, 3], [0, 2], [0, 1, 3], [0, 2]]  # chord kills induced C4
    assert not has_induced_c4(diag)
    px = build_pixelation(OrthoPolygon(SHAPES["plus"]))
    assert not has_induced_c4(px.dual.adj)

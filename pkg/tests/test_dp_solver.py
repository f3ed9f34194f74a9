import itertools

from helpers import SHAPES, fixture_polygons
from rguard.dp_solver import verify_solution
from rguard.guard_model import GuardTask
from rguard.instance_gen import gen_holed_variant, gen_tree_polygon
from rguard.oracle import oracle_min_guards
from rguard.pipeline import solve_task
from rguard.polygon_core import OrthoPolygon, scale_polygon


def solve(poly, **kw):
    return solve_task(poly, GuardTask.make(**kw))


def test_unit_square_one_guard():
    ctx = solve(OrthoPolygon(SHAPES["unit"]))
    assert ctx.solution.size == 1
    assert verify_solution(ctx.H, ctx.solution)


def test_l_shape_one_guard():
    ctx = solve(OrthoPolygon(SHAPES["L"]))
    assert ctx.solution.size == 1


def test_u_shape_two_guards():
    ctx = solve(OrthoPolygon(SHAPES["U"]))
    assert ctx.solution.size == 2


def test_plus_one_pixel_guard():
    ctx = solve(OrthoPolygon(SHAPES["plus"]), guard_modes=("all-pixel-guards",))
    assert ctx.solution.size == 1
    assert ctx.solution.guards[0].kind == "pixel"


def test_infeasible_empty_guard_set():
    ctx = solve(OrthoPolygon(SHAPES["L"]), guard_modes=("pixels",),
                guard_pixels=())
    assert ctx.solution.status == "infeasible"
    assert ctx.solution.witness_target is not None
    assert not verify_solution(ctx.H, ctx.solution)


def test_verify_mutations():
    ctx = solve(OrthoPolygon(SHAPES["U"]))
    sol = ctx.solution
    assert verify_solution(ctx.H, sol)
    removed = sol.guards.pop()
    assert not verify_solution(ctx.H, sol)
    sol.guards.append(removed)
    assert verify_solution(ctx.H, sol)
    old = sol.certificates[0].rect_id
    sol.certificates[0].rect_id = 10 ** 6
    assert not verify_solution(ctx.H, sol)
    sol.certificates[0].rect_id = old


def test_certificates_cover_every_target():
    for poly in fixture_polygons():
        ctx = solve(poly)
        assert len(ctx.solution.certificates) == len(ctx.H.targets)
        assert verify_solution(ctx.H, ctx.solution)


def test_determinism_same_guard_ids():
    poly_a = gen_tree_polygon(30, 4)
    poly_b = gen_tree_polygon(30, 4)
    a = solve(poly_a)
    b = solve(poly_b)
    assert [g.json_obj() for g in a.solution.guards] == \
        [g.json_obj() for g in b.solution.guards]


def test_oracle_equivalence_mode_grid():
    polys = [gen_tree_polygon(n, s) for n in (6, 14, 24) for s in (0, 1)]
    polys.append(gen_holed_variant(scale_polygon(gen_tree_polygon(6, 2), 3), 1, 2))
    modes = itertools.product(
        ["all", "boundary", "vertices"],
        [("all-points",), ("vertices",), ("all-pixel-guards",)],
        [False, True])
    for poly in polys:
        for tm, gm, deg in modes:
            task = GuardTask.make(target_mode=tm, guard_modes=gm,
                                  allow_degenerate=deg)
            ctx = solve_task(poly, task)
            ref = oracle_min_guards(ctx.px, task)
            got = ctx.solution.size if ctx.solution.status == "optimal" else None
            want = ref.size if ref.status == "optimal" else None
            assert got == want, (tm, gm, deg)
        modes = itertools.product(["all"], [("all-points",)], [False, True])


def test_monotonicity_metamorphic():
    for seed in range(5):
        poly = gen_tree_polygon(18, seed)
        # more guards never hurt: vertices ⊆ all points
        a = solve(poly, guard_modes=("vertices",)).solution
        b = solve(poly, guard_modes=("all-points",)).solution
        if a.status == "optimal":
            assert b.status == "optimal" and b.size <= a.size
        # fewer targets never hurt: vertices ⊆ boundary ⊆ all
        sizes = {}
        for tm in ("vertices", "boundary", "all"):
            s = solve(poly, target_mode=tm).solution
            assert s.status == "optimal"
            sizes[tm] = s.size
        assert sizes["vertices"] <= sizes["boundary"] <= sizes["all"]


def test_solution_json_shape():
    ctx = solve(OrthoPolygon(SHAPES["L"]))
    obj = ctx.solution.to_json_obj(ctx.H)
    assert obj["status"] == "optimal"
    assert obj["size"] == 1
    assert obj["guards"][0]["type"] == "point"
    cert = obj["certificates"][0]
    assert set(cert) == {"target", "rect", "guard"}
    assert cert["guard"] == 0

import pytest

from gridpalf import scene as S
from gridpalf.construct import construct_palf

from conftest import load


def test_rects_meet_closed():
    assert S.rects_meet((0, 0, 2, 2), (2, 2, 3, 3))
    assert not S.rects_meet((0, 0, 1, 1), (2, 2, 3, 3))


def test_init_scene_checks_base(trefoil):
    with pytest.raises(S.SceneError):
        S.init_scene(trefoil, "annulus")
    with pytest.raises(ValueError):
        S.init_scene(trefoil, "torus")
    s = S.init_scene(trefoil)
    assert s.W == S.U * (trefoil.n + 1)
    assert len(s.guide_arcs) == 2 * trefoil.n


def test_perimeter_key_runs_counterclockwise():
    W = 48
    top = S.Notch("top", (31, 0, 33, 6), 4)
    left = S.Notch("left", (0, 7, 6, 9), 1)
    bottom = S.Notch("bottom", (7, 42, 9, 48), -1)
    right = S.Notch("right", (42, 15, 48, 17), -2)
    keys = [nt.key(W) for nt in (top, left, bottom, right)]
    assert keys == sorted(keys)
    assert left.tip == (6, 8) and top.tip == (32, 6)


def test_foot_options_prefer_clean_slit(trefoil):
    opts, blockers = S.foot_options(trefoil, set(), 1, "top")
    assert [o.kind for o in opts] == ["slit", "push"]
    assert blockers == ()
    assert opts[0].notch.edge == "left"


def test_push_beats_slit_under_handles(trefoil):
    opts, _ = S.foot_options(trefoil, {1, 2, 3}, 4, "top")
    assert [o.kind for o in opts] == ["push", "slit"]
    assert opts[1].passes == (1, 3)


def test_notch_conflicts_raise(trefoil):
    s = S.init_scene(trefoil)
    s = S.carve_slit(s, 1, "left", 1, foot=1)
    with pytest.raises(S.SceneError):
        S.carve_slit(s, 1, "left", 1, foot=2)
    with pytest.raises(ValueError):
        S.carve_slit(s, 1.25, "left", 1)


def test_guide_arc_blocks_notch(trefoil):
    s = S.init_scene(trefoil)
    with pytest.raises(S.SceneError, match="H2"):
        S.carve_slit(s, 2, "left", 5, foot=5)
    # between rows 2 and 3 the slit runs into unlifted verticals
    with pytest.raises(S.SceneError) as exc:
        S.carve_slit(s, 2.5, "left", 5, foot=5)
    assert exc.value.blocking and exc.value.blocking[0] in (1, 2, 3, 4)


def test_region_polygon_is_simple_after_construction(figure8):
    p = construct_palf(figure8)
    poly = S.region_polygon(p.scene)
    assert S.is_simple(poly)
    assert tuple(abs(x) for x in S.boundary_word(p.scene)) == tuple(
        x for x in p.fiber.word if x)


def test_is_simple_detects_crossing():
    assert S.is_simple([(0, 0), (4, 0), (4, 4), (0, 4)])
    assert not S.is_simple([(0, 0), (4, 4), (4, 0), (0, 4)])


def test_reachability(trefoil):
    s = S.init_scene(trefoil)
    assert S.reachable(s, (2, 2))
    # a point boxed in by guide arcs needs the lifts
    assert not S.reachable(s, (22, 24))
    assert not S.reachable(s, (22, 24), mode="comb")
    lifted = S.Scene(trefoil, lifted=frozenset({1, 2}))
    assert S.reachable(lifted, (22, 24))


def test_hole_rect_centered():
    assert S.hole_rect((2, 6)) == (46, 14, 50, 18)

import pytest

from gridpalf.construct import (ConstructionError, base_lifts, construct_palf, decide_lifts,
                                rtl_equivalence_check, stabilize_ne_corners)
from gridpalf.fiber import canonical_word, surface_framing
from gridpalf.grid import GridDiagram, corner_tag, legendrian_invariants, rotate180
from gridpalf.verify import torus_grid, twist_grid

from conftest import DISK_FIXTURES, load

TREFOIL_WORD = canonical_word((2, 3, 1, 4, 2, 3, 4, 1))


def test_trefoil_flex(trefoil):
    p = construct_palf(trefoil)
    assert p.lifts == (1, 2, 3, 4)
    assert p.fiber.word == (4, 3, 1, 2, 3, 4, 1, 2)
    assert canonical_word(p.fiber.word) == TREFOIL_WORD
    assert (p.fiber.chi, p.fiber.b, p.fiber.g) == (-3, 3, 1)
    pushes = [(o.column, o.end) for o in p.options if o.kind == "push"]
    assert pushes == [(4, "top")]
    assert p.factorization.names == ("C_0", "C_4", "C_3", "C_2", "C_1")


def test_trefoil_c0(trefoil):
    p = construct_palf(trefoil)
    (c0,) = p.c0_curves
    assert c0.homology == (-1, -1, 1, 1)
    assert surface_framing(p.fiber, c0) == 1
    assert c0.framing == 0
    assert all(c.framing == -2 and surface_framing(p.fiber, c) == -1 for c in p.cycles)


def test_unknot(unknot):
    p = construct_palf(unknot)
    assert p.lifts == (1,)
    assert p.fiber.word == (1, 1)
    assert p.c0_curves[0].framing == -2


def test_figure_eight(figure8):
    p = construct_palf(figure8, include_c0=False)
    assert p.lifts == (1, 2, 3, 4, 5)
    assert canonical_word(p.fiber.word) == (1, 2, 3, 1, 4, 5, 3, 2, 5, 4)


def test_extreme_column_never_lifted():
    for name in DISK_FIXTURES:
        g = load(name)
        assert g.n not in decide_lifts(g, "flex")
        assert 1 not in decide_lifts(rotate180(g), "rtl")


def test_base_lifts_contain_nw_tops(figure8):
    nw = {c for c in range(1, figure8.n) if corner_tag(figure8, c, "top") == "NW"}
    assert nw <= base_lifts(figure8, "comb")


def test_annulus(annulus):
    p = construct_palf(annulus)
    assert p.base == "annulus"
    assert p.lifts == tuple(range(1, 9))
    assert p.fiber.handles[0] == 0 and p.fiber.k_total == 9
    assert p.gamma[0] == "right"
    assert p.factorization.names[:2] == ("C_01", "C_02")
    # the h0 coordinate of each C_0k is its winding number about the hole
    assert [c.homology[0] for c in p.c0_curves] == [-1, 0]
    assert len(p.factorization) == 10


def test_rtl_matches_flex():
    for name in DISK_FIXTURES:
        g = load(name)
        assert rtl_equivalence_check(g)
        p = construct_palf(g, include_c0=False)
        q = construct_palf(rotate180(g), "rtl", include_c0=False)
        assert q.factorization.names == tuple(f"C_{c}" for c in q.lifts)
        assert (q.fiber.b, q.fiber.g) == (p.fiber.b, p.fiber.g)


@pytest.mark.parametrize("s,want", [(2, (2, 5, 2)), (3, (1, 6, 3))])
def test_comb_on_twist_knots(s, want):
    p = construct_palf(twist_grid(s), "comb", include_c0=False)
    assert (p.fiber.b, len(p.lifts), p.fiber.g) == want


def test_stabilized_pipeline(trefoil):
    h = stabilize_ne_corners(trefoil, "comb")
    assert legendrian_invariants(h).tb == -1
    assert all(corner_tag(h, c, "top") == "NW" for c in decide_lifts(h, "comb"))
    p = construct_palf(trefoil, "comb", stabilize=True)
    assert p.grid == h
    assert (p.fiber.b, p.fiber.g) == (1, 2)


def test_backtracking_revises_crowded_feet():
    # a greedy first choice here crowds out the bottom foot of column 5
    g = GridDiagram(6, (6, 5, 2, 3, 1, 4), (5, 4, 1, 6, 3, 2))
    assert construct_palf(g, "flex").lifts == (1, 2, 3, 4, 5)


def test_construction_error_names_column():
    g = GridDiagram(6, (6, 4, 2, 5, 3, 1), (4, 5, 1, 3, 6, 2))
    with pytest.raises(ConstructionError) as exc:
        construct_palf(g, "flex")
    assert exc.value.column == 4
    # the mirrored strategy fails at the mirrored column
    with pytest.raises(ConstructionError) as exc:
        construct_palf(rotate180(g), "rtl")
    assert exc.value.column == 3


def test_unknown_strategy(trefoil):
    with pytest.raises((ValueError, ConstructionError)):
        construct_palf(trefoil, "diagonal")


def test_torus_factorization_length():
    p = construct_palf(torus_grid(3))
    assert len(p.factorization) == len(p.lifts) + 1

import numpy as np
import pytest

from gridpalf.construct import construct_palf
from gridpalf.fiber import Curve, from_boundary_word
from gridpalf.monodromy import (MonodromyError, MonodromyFactorization, commute, hurwitz_left,
                                hurwitz_right, parse_script, run_script, section4_sequence,
                                total_monodromy, transvection)
from gridpalf.verify import torus_grid


def _fac(word, classes):
    f = from_boundary_word(word)
    return MonodromyFactorization(f, tuple(Curve(f"V{i}", tuple(v)) for i, v in enumerate(classes, 1)))


def test_transvection_formula():
    f = from_boundary_word([1, 2, 1, 2])
    T = transvection(f, (1, 0))
    # x -> x + <x, a> a with <e2, e1> = -1
    assert T.tolist() == [[1, -1], [0, 1]]


def test_product_order():
    fac = _fac([1, 2, 1, 2], [(1, 0), (0, 1)])
    a, b = fac.curves
    assert np.array_equal(total_monodromy(fac), transvection(fac.fiber, b) @ transvection(fac.fiber, a))


def test_hurwitz_moves_keep_product_and_invert():
    fac = _fac([1, 2, 3, 1, 2, 3], [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1)])
    ref = total_monodromy(fac)
    for i in range(1, len(fac)):
        left = hurwitz_left(fac, i)
        right = hurwitz_right(fac, i)
        assert np.array_equal(total_monodromy(left), ref)
        assert np.array_equal(total_monodromy(right), ref)
        assert hurwitz_right(left, i).classes() == fac.classes()
        assert hurwitz_left(right, i).classes() == fac.classes()


def test_returning_class_restores_name():
    fac = _fac([1, 2, 1, 2], [(1, 0), (0, 1)])
    moved = hurwitz_left(fac, 1)
    assert moved.names == ("V2'", "V1")
    back = hurwitz_right(moved, 1)
    assert back.names == ("V1", "V2")


def test_commute_needs_certificate():
    fac = _fac([1, 2, 1, 2], [(1, 0), (0, 1)])
    with pytest.raises(MonodromyError):
        commute(fac, 1)
    with pytest.raises(MonodromyError):
        hurwitz_left(fac, 2)


def test_parse_script():
    assert parse_script("L 3\n# skip\nl 2; C 2  # trailing\n") == [("L", 3), ("L", 2), ("C", 2)]
    with pytest.raises(MonodromyError, match="line 2"):
        parse_script("L 1\nX 2")
    with pytest.raises(MonodromyError):
        parse_script("L")


def test_run_script_history():
    fac = construct_palf(torus_grid(1), include_c0=False).factorization
    final, hist = run_script(fac, [("R", 1), ("L", 2)])
    assert [h[0] for h in hist] == ["R 1", "L 2"]
    assert all(h[2] for h in hist)
    assert final.names == fac.names


def test_section4_trefoil():
    fac = construct_palf(torus_grid(1), include_c0=False).factorization
    rep = section4_sequence(fac)
    assert rep["final_order"] == ["C_2'", "C_3", "C_4", "C_1"]
    assert rep["moved_class"] == rep["moved_class_expected"]
    assert rep["ok"] and rep["invariant"]
    assert rep["page"] == {"genus": 1, "boundary": 3}


def test_section4_needs_three_curves():
    with pytest.raises(MonodromyError):
        section4_sequence(_fac([1, 1], [(1,)]))

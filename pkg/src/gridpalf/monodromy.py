"""Homological monodromy: transvections, products and Hurwitz moves.

Convention: a factorization (V_1, ..., V_m) has total monodromy
T_{V_m} ... T_{V_1}, so V_1 acts first.  Moving B left past A turns
(A, B) into (t_A^{-1}(B), A); moving A right past B gives (B, t_B(A)).
Both keep the product.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .fiber import Curve, FiberError, RibbonFiber, disjoint, intersection_form

__all__ = [
    "MonodromyError",
    "MonodromyFactorization",
    "transvection",
    "total_monodromy",
    "hurwitz_left",
    "hurwitz_right",
    "commute",
    "parse_script",
    "run_script",
    "section4_sequence",
    "preserves_form",
]


class MonodromyError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonodromyFactorization:
    fiber: RibbonFiber
    curves: tuple[Curve, ...]

    def __len__(self) -> int:
        return len(self.curves)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def classes(self) -> list[tuple[int, ...]]:
        return [c.homology for c in self.curves]


def _omega(f: RibbonFiber) -> np.ndarray:
    return np.array(intersection_form(f), dtype=np.int64).reshape(f.k_total, f.k_total)


def transvection(f: RibbonFiber, c, power: int = 1) -> np.ndarray:
    """Matrix of x -> x + power * <x, c> c (column vectors)."""
    v = np.array(c.homology if isinstance(c, Curve) else c, dtype=np.int64)
    om = _omega(f)
    # <x, c> = x^T Omega c
    return np.eye(f.k_total, dtype=np.int64) + power * np.outer(v, om @ v)


def total_monodromy(fac: MonodromyFactorization) -> np.ndarray:
    f = fac.fiber
    out = np.eye(f.k_total, dtype=np.int64)
    for c in fac.curves:
        out = transvection(f, c) @ out
    return out


def preserves_form(f: RibbonFiber, T: np.ndarray) -> bool:
    om = _omega(f)
    return bool(np.array_equal(T.T @ om @ T, om))


def _image(f: RibbonFiber, a: Curve, b: Curve, power: int) -> Curve:
    """t_a^power applied to b.  Disjoint curves are left alone; otherwise the
    image keeps only its class, remembering the embedded curve it came from."""
    if disjoint(f, a, b):
        return b
    v = tuple(int(x) for x in transvection(f, a, power) @ np.array(b.homology, dtype=np.int64))
    origin = b.meta.get("origin", b)
    if v == origin.homology and not origin.homology_only:
        return origin
    return Curve(origin.name + "'", v, homology_only=True, meta={"origin": origin})


def _check(fac: MonodromyFactorization, i: int) -> None:
    if not 1 <= i < len(fac.curves):
        raise MonodromyError(f"position {i} out of range 1..{len(fac.curves) - 1}")


def hurwitz_left(fac: MonodromyFactorization, i: int) -> MonodromyFactorization:
    """(.., V_i, V_{i+1}, ..) -> (.., t_{V_i}^{-1}(V_{i+1}), V_i, ..)."""
    _check(fac, i)
    cs = list(fac.curves)
    a, b = cs[i - 1], cs[i]
    new = _image(fac.fiber, a, b, -1)
    cs[i - 1], cs[i] = new, a
    return replace(fac, curves=tuple(cs))


def hurwitz_right(fac: MonodromyFactorization, i: int) -> MonodromyFactorization:
    """(.., V_i, V_{i+1}, ..) -> (.., V_{i+1}, t_{V_{i+1}}(V_i), ..)."""
    _check(fac, i)
    cs = list(fac.curves)
    a, b = cs[i - 1], cs[i]
    new = _image(fac.fiber, b, a, 1)
    cs[i - 1], cs[i] = b, new
    return replace(fac, curves=tuple(cs))


def commute(fac: MonodromyFactorization, i: int) -> MonodromyFactorization:
    _check(fac, i)
    cs = list(fac.curves)
    a, b = cs[i - 1], cs[i]
    if not disjoint(fac.fiber, a, b):
        raise MonodromyError(f"{a.name} and {b.name} are not certified disjoint")
    cs[i - 1], cs[i] = b, a
    return replace(fac, curves=tuple(cs))


def parse_script(text: str) -> list[tuple[str, int]]:
    """Lines 'L j' (move the j-th curve left), 'R j' (move it right),
    'C j' (swap curves j and j+1).  '#' starts a comment; ';' separates moves."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            part = part.strip()
            if not part:
                continue
            bits = part.split()
            if len(bits) != 2 or bits[0].upper() not in ("L", "R", "C") or not bits[1].lstrip("-").isdigit():
                raise MonodromyError(f"line {lineno}: cannot read move {part!r}")
            out.append((bits[0].upper(), int(bits[1])))
    return out


def run_script(fac: MonodromyFactorization, moves: Sequence[tuple[str, int]]):
    """Apply moves, checking the total monodromy after each one.

    Returns (final factorization, history) where history holds
    (move, names, invariant) per step.
    """
    ref = total_monodromy(fac)
    hist = []
    for op, j in moves:
        if op == "L":
            fac = hurwitz_left(fac, j - 1)
        elif op == "R":
            fac = hurwitz_right(fac, j)
        else:
            fac = commute(fac, j)
        ok = bool(np.array_equal(total_monodromy(fac), ref))
        hist.append((f"{op} {j}", fac.names, ok))
    return fac, hist


SECTION4_SCRIPT = [("L", 3), ("L", 2), ("C", 2)]


def section4_sequence(fac: MonodromyFactorization, target: Sequence[Sequence[int]] | None = None) -> dict:
    """Two left moves on the third curve, then swap the second pair.

    ``fac`` is (C_k, C_{k-1}, ..., C_1).  The report lists each step, the
    class of the moved curve against t_{C_k}^{-1} t_{C_{k-1}}^{-1} [C_{k-2}],
    and the page type.
    """
    f = fac.fiber
    if len(fac) < 3:
        raise MonodromyError("need at least three curves")
    c_top, c_next, c_moved = fac.curves[0], fac.curves[1], fac.curves[2]
    expect = transvection(f, c_top, -1) @ transvection(f, c_next, -1) @ np.array(c_moved.homology)
    final, hist = run_script(fac, SECTION4_SCRIPT)
    rep = {
        "steps": [{"move": m, "order": list(n), "invariant": ok} for m, n, ok in hist],
        "final_order": list(final.names),
        "moved_class": list(final.curves[0].homology),
        "moved_class_expected": [int(x) for x in expect],
        "page": {"genus": f.g, "boundary": f.b},
    }
    rep["moved_class_ok"] = rep["moved_class"] == rep["moved_class_expected"]
    rep["invariant"] = all(ok for _, _, ok in hist)
    if target is not None:
        tf = MonodromyFactorization(f, tuple(Curve(f"g{i}", tuple(v)) for i, v in enumerate(target)))
        rep["matches_target"] = bool(np.array_equal(total_monodromy(tf), total_monodromy(final)))
    rep["ok"] = rep["invariant"] and rep["moved_class_ok"]
    return rep

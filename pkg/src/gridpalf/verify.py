"""Algebraic checks on constructed PALFs and on the two knot families.

The total space X of a PALF with fiber F and cycles V_1..V_m has
chi(X) = chi(F) + m and H_1(X) = H_1(F) / <[V_1], ..., [V_m]>.  Both are
compared against the handlebody the construction is meant to produce:
one 0-handle, l 1-handles (one if the grid has a hole) and one 2-handle
per link component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .construct import PALF, ConstructionError, construct_palf, rtl_equivalence_check
from .fiber import canonical_word, surface_framing
from .grid import (GridDiagram, GridError, horizontal_translate, legendrian_invariants,
                   vertical_translate, winding_number)

__all__ = [
    "Check",
    "VerificationReport",
    "HandlebodyExpectation",
    "smith_normal_form",
    "cokernel",
    "expectation_for",
    "check_total_space",
    "check_framings",
    "check_allowability",
    "check_twist_family",
    "check_torus_family",
    "check_translation_principle",
    "check_rtl",
    "torus_grid",
    "twist_grid",
    "verify_palf",
]


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "passed": self.passed}


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected, actual, passed: bool | None = None) -> Check:
        if passed is None:
            passed = expected == actual
        c = Check(name, expected, actual, bool(passed))
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.expected, c.actual, c.passed))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


# -- Smith normal form -------------------------------------------------


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero entry in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def cokernel(M: Sequence[Sequence[int]], dim: int | None = None) -> dict:
    """Z^dim modulo the column span of M, as {'free': r, 'torsion': [d, ...]}."""
    dim = len(M) if dim is None else dim
    d = smith_normal_form(M) if dim else []
    return {"free": dim - len(d), "torsion": [x for x in d if x != 1]}


def _fmt_group(cok: dict) -> str:
    parts = [f"Z/{d}" for d in cok["torsion"]]
    parts += ["Z"] * cok["free"]
    return " + ".join(parts) if parts else "0"


# -- total space -------------------------------------------------------


@dataclass(frozen=True)
class HandlebodyExpectation:
    ell: int
    m: int
    framings: tuple[int, ...]
    # relations: one column per 2-handle, one row per 1-handle
    presentation: tuple[tuple[int, ...], ...]

    @property
    def chi(self) -> int:
        return 1 - self.ell + self.m

    @property
    def h1(self) -> dict:
        return cokernel([list(r) for r in self.presentation], self.ell)


def expectation_for(palf: PALF) -> HandlebodyExpectation:
    g = palf.grid
    ell = 1 if g.hole is not None else 0
    comps = range(1, len(g.components) + 1) if palf.include_c0 else range(0)
    m = len(comps)
    fr = tuple(legendrian_invariants(g, k).tb - 1 for k in comps)
    pres = ()
    if ell:
        pres = (tuple(winding_number(g, k, g.hole) for k in comps),)
    return HandlebodyExpectation(ell, m, fr, pres)


def check_total_space(palf: PALF, exp: HandlebodyExpectation | None = None) -> VerificationReport:
    exp = exp or expectation_for(palf)
    f = palf.fiber
    cyc = palf.factorization.curves
    rep = VerificationReport()
    chi_x = f.chi + len(cyc)
    rep.add("euler_characteristic", exp.chi, chi_x)
    mat = [[c.homology[i] for c in cyc] for i in range(f.k_total)]
    got = cokernel(mat, f.k_total)
    rep.add("first_homology", _fmt_group(exp.h1), _fmt_group(got))
    rep.extend(check_allowability(palf))
    return rep


def check_allowability(palf: PALF) -> VerificationReport:
    rep = VerificationReport()
    zero = [c.name for c in palf.factorization.curves if not any(c.homology)]
    rep.add("allowable", [], zero)
    return rep


def check_framings(palf: PALF) -> VerificationReport:
    rep = VerificationReport()
    g = palf.grid
    f = palf.fiber
    for k, c in enumerate(palf.c0_curves, start=1):
        tb = legendrian_invariants(g, k).tb
        sf = surface_framing(f, c)
        rep.add(f"surface_framing[{c.name}]", tb, sf)
        rep.add(f"framing[{c.name}]", tb - 1, c.framing)
    for c in palf.cycles:
        rep.add(f"surface_framing[{c.name}]", -1, surface_framing(f, c))
        rep.add(f"framing[{c.name}]", -2, c.framing)
    return rep


def verify_palf(palf: PALF) -> VerificationReport:
    rep = VerificationReport()
    rep.extend(check_total_space(palf), "total_space.")
    rep.extend(check_framings(palf), "framings.")
    f = palf.fiber
    rep.add("fiber.euler_formula", f.chi, 2 - 2 * f.g - f.b)
    rep.add("fiber.handles", len(palf.lifts) + (1 if f.base == "annulus" else 0), f.k_total)
    top = palf.grid.n if palf.strategy != "rtl" else 1
    rep.add("lifts.extreme_column_free", False, top in palf.lifts)
    return rep


# -- families ----------------------------------------------------------


def torus_grid(n: int) -> GridDiagram:
    """T(2, 2n+1) on the (2n+3)-grid: X on the diagonal, O two steps right."""
    m = 2 * n + 3
    return GridDiagram(m, tuple(range(1, m + 1)), tuple((r + 1) % m + 1 for r in range(1, m + 1)))


def twist_grid(s: int) -> GridDiagram:
    """The twist knot W_s with s half twists in the clasp-free staircase
    position, shifted one row down and two columns right."""
    if s < 1:
        raise ValueError("s must be positive")
    n = s + 4
    xs, os = [], []
    for r in range(1, s + 1):
        if r % 2:
            xs.append(r)
            os.append(r + 2)
        else:
            xs.append(r + 2)
            os.append(r)
    if s % 2:
        tail = [(n, s + 1), (n - 1, 1), (n - 2, n), (2, n - 1)]
    else:
        tail = [(s + 1, n), (n - 1, 1), (n, n - 2), (2, n - 1)]
    for x, o in tail:
        xs.append(x)
        os.append(o)
    g = GridDiagram(n, tuple(xs), tuple(os))
    return horizontal_translate(vertical_translate(g, 1), 2)


def _bkg(p: PALF) -> list[int]:
    return [p.fiber.b, len(p.lifts), p.fiber.g]


def check_twist_family(s_range: Iterable[int]) -> VerificationReport:
    rep = VerificationReport()
    for s in s_range:
        g = twist_grid(s)
        try:
            p = construct_palf(g, "flex", include_c0=False)
            rep.add(f"twist[{s}].flex", [s + 2, s + 3, 1], _bkg(p))
        except ConstructionError as exc:
            rep.add(f"twist[{s}].flex", [s + 2, s + 3, 1], str(exc), False)
        if s in (2, 3):
            want = [2, 5, 2] if s == 2 else [1, 6, 3]
            try:
                rep.add(f"twist[{s}].comb", want, _bkg(construct_palf(g, "comb", include_c0=False)))
            except ConstructionError as exc:
                rep.add(f"twist[{s}].comb", want, str(exc), False)
    return rep


def check_torus_family(n_range: Iterable[int]) -> VerificationReport:
    rep = VerificationReport()
    for n in n_range:
        g = torus_grid(n)
        try:
            p = construct_palf(g, "flex", include_c0=False)
            rep.add(f"torus[{n}].flex", [2 * n + 1, 2 * n + 2, 1], _bkg(p))
        except ConstructionError as exc:
            rep.add(f"torus[{n}].flex", [2 * n + 1, 2 * n + 2, 1], str(exc), False)
        rep.add(f"torus[{n}].tb", 2 * n - 1, legendrian_invariants(g).tb)
    return rep


def check_translation_principle(g: GridDiagram, strategy: str = "flex") -> VerificationReport:
    rep = VerificationReport()
    ref = None
    for shift in range(g.n):
        try:
            h = vertical_translate(g, shift)
        except GridError:
            continue  # the shift drags a strand across the hole
        try:
            p = construct_palf(h, strategy, include_c0=False)
        except ConstructionError as exc:
            rep.add(f"shift[{shift}]", ref, str(exc), False)
            continue
        got = {"word": list(canonical_word(p.fiber.word)), "chi_b_g": [p.fiber.chi, p.fiber.b, p.fiber.g]}
        if ref is None:
            ref = got
        rep.add(f"shift[{shift}]", ref, got)
    return rep


def check_rtl(g: GridDiagram) -> VerificationReport:
    rep = VerificationReport()
    rep.add("rtl_matches_rotated_flex", True, rtl_equivalence_check(g))
    return rep

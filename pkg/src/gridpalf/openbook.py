"""Compare a PALF's fiber and monodromy with a given open book.

Only the homological shadow is compared: the page type (g, b), and whether
some form-preserving change of basis conjugates one total monodromy into
the other.  The search runs over short words in elementary symplectic
transvections (about e_i and e_i +- e_j), meeting in the middle.

Fixture files are plain text::

    # comment
    word 2 3 1 4 2 3 4 1
    ends 1 1 -1 1 -1 -1 -1 1     (optional; default first appearance = in)
    convention right-to-left    (how the printed product is read; curves are
                                 always listed in the order they act)
    curve gamma_a 1 0 -1 0
    ...
    status unverified-against-text
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .construct import PALF
from .fiber import Curve, RibbonFiber, from_boundary_word, intersection_form, relabel
from .monodromy import MonodromyFactorization, section4_sequence, total_monodromy, transvection

__all__ = ["OpenBookError", "OpenBookFixture", "parse_fixture", "format_fixture",
           "compare", "identify_pages"]


class OpenBookError(ValueError):
    pass


@dataclass(frozen=True)
class OpenBookFixture:
    page: RibbonFiber
    names: tuple[str, ...]
    curves: tuple[tuple[int, ...], ...]
    convention: str = "left-to-right"
    status: str = "unverified-against-text"

    def factorization(self) -> MonodromyFactorization:
        pairs = list(zip(self.names, self.curves))
        return MonodromyFactorization(self.page, tuple(Curve(n, tuple(v)) for n, v in pairs))


def parse_fixture(text: str) -> OpenBookFixture:
    word = ends = None
    conv, status = "left-to-right", "unverified-against-text"
    names, curves = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "word":
                word = [int(x) for x in rest]
            elif head == "ends":
                ends = [int(x) for x in rest]
            elif head == "convention":
                conv = rest[0]
                if conv not in ("left-to-right", "right-to-left"):
                    raise OpenBookError(f"line {lineno}: unknown convention {conv!r}")
            elif head == "curve":
                names.append(rest[0])
                curves.append(tuple(int(x) for x in rest[1:]))
            elif head == "status":
                status = " ".join(rest)
            else:
                raise OpenBookError(f"line {lineno}: unknown directive {head!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, OpenBookError):
                raise
            raise OpenBookError(f"line {lineno}: {exc}") from None
    if word is None:
        raise OpenBookError("missing page word")
    page = from_boundary_word(word, ends=ends)
    for nm, v in zip(names, curves):
        if len(v) != page.k_total:
            raise OpenBookError(f"curve {nm} has {len(v)} coordinates, page needs {page.k_total}")
    return OpenBookFixture(page, tuple(names), tuple(curves), conv, status)


def format_fixture(fx: OpenBookFixture) -> str:
    lines = ["word " + " ".join(map(str, fx.page.word)),
             "ends " + " ".join(map(str, fx.page.ends)),
             f"convention {fx.convention}"]
    lines += [f"curve {n} " + " ".join(map(str, v)) for n, v in zip(fx.names, fx.curves)]
    lines.append(f"status {fx.status}")
    return "\n".join(lines) + "\n"


def identify_pages(src: RibbonFiber, dst: RibbonFiber) -> np.ndarray | None:
    """A signed permutation P (columns: images of src basis vectors in dst
    coordinates) induced by matching the two boundary words, with
    P^T Omega_dst P = Omega_src; None if the words differ."""
    m = len(src.word)
    if m != len(dst.word):
        return None
    om_s = np.array(intersection_form(src), dtype=np.int64).reshape(src.k_total, src.k_total)
    om_d = np.array(intersection_form(dst), dtype=np.int64).reshape(dst.k_total, dst.k_total)
    target = relabel(dst.word)
    for i in range(m):
        w = src.word[i:] + src.word[:i]
        e = src.ends[i:] + src.ends[:i]
        if relabel(w) != target:
            continue
        P = np.zeros((dst.k_total, src.k_total), dtype=np.int64)
        for p in range(m):
            a, b = w[p], dst.word[p]
            P[dst.index(b), src.index(a)] = 1 if e[p] == dst.ends[p] else -1
        if np.array_equal(P.T @ om_d @ P, om_s):
            return P
    return None


def _generators(f: RibbonFiber):
    k = f.k_total
    vecs = []
    for i in range(k):
        v = [0] * k
        v[i] = 1
        vecs.append(tuple(v))
    for i, j in itertools.combinations(range(k), 2):
        for s in (1, -1):
            v = [0] * k
            v[i], v[j] = 1, s
            vecs.append(tuple(v))
    out = []
    for v in vecs:
        for pw in (1, -1):
            out.append(((v, pw), transvection(f, v, pw)))
    return out


def _ball(gens, M: np.ndarray, depth: int, inverse: bool):
    """Conjugates Q M Q^{-1} for words Q of length <= depth (or Q^{-1} M Q)."""
    seen = {M.tobytes(): ()}
    frontier = [(M, ())]
    for _ in range(depth):
        nxt = []
        for A, word in frontier:
            for (lab, T) in gens:
                Ti = np.rint(np.linalg.inv(T)).astype(np.int64)
                B = Ti @ A @ T if inverse else T @ A @ Ti
                key = B.tobytes()
                if key not in seen:
                    seen[key] = word + (lab,)
                    nxt.append((B, word + (lab,)))
        frontier = nxt
    return seen


def compare(palf: PALF, fx: OpenBookFixture, max_len: int = 6, run_path: bool = True) -> dict:
    """Page type, then a basis identification conjugating the monodromies."""
    f = palf.fiber
    rep = {"page_expected": [fx.page.g, fx.page.b], "page_actual": [f.g, f.b],
           "status": fx.status, "level": "homology"}
    if (f.g, f.b) != (fx.page.g, fx.page.b) or f.k_total != fx.page.k_total:
        raise OpenBookError(f"page type (g, b) = {(fx.page.g, fx.page.b)} does not match fiber {(f.g, f.b)}")
    fac = palf.factorization
    if run_path:
        path = section4_sequence(fac)
        rep["path"] = path["final_order"]
        rep["path_invariant"] = path["invariant"]
    P = identify_pages(f, fx.page)
    if P is None:
        rep.update(found=False, reason="boundary words differ")
        return rep
    M = P @ total_monodromy(fac) @ np.rint(np.linalg.inv(P)).astype(np.int64)
    N = total_monodromy(fx.factorization())
    gens = _generators(fx.page)
    half = (max_len + 1) // 2
    left = _ball(gens, M, half, inverse=False)
    right = _ball(gens, N, max_len - half, inverse=True)
    hit = next((k for k in left if k in right), None)
    if hit is None:
        rep.update(found=False, reason=f"no identification within {max_len} generators")
        return rep
    # Q2 M Q2^-1 = Q1^-1 N Q1, so Q = Q1 Q2 conjugates M to N
    w2, w1 = left[hit], right[hit]
    Q = np.eye(fx.page.k_total, dtype=np.int64)
    for v, pw in w2:
        Q = transvection(fx.page, v, pw) @ Q
    Q1 = np.eye(fx.page.k_total, dtype=np.int64)
    for v, pw in w1:
        Q1 = Q1 @ transvection(fx.page, v, pw)
    Q = Q1 @ Q
    ident = Q @ P
    assert np.array_equal(ident @ total_monodromy(fac), N @ ident)
    rep.update(found=True, word=[[list(v), pw] for v, pw in list(w2) + list(w1)],
               identification=ident.tolist())
    return rep

"""Regular fibers as ribbon surfaces: one disk plus untwisted bands.

A fiber is stored as the cyclic boundary word of the disk: the sequence of
feet met counterclockwise.  Every label appears twice, once as the
in-foot (end +1) and once as the out-foot (end -1).  The core of handle i,
run from its in-foot across the band to its out-foot and closed through
the disk, is the basis class e_i of H_1.

The annulus used for links is the disk plus a distinguished handle h0
(label 0) whose feet sit next to each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "FiberError",
    "RibbonFiber",
    "Curve",
    "from_boundary_word",
    "euler_characteristic",
    "boundary_components",
    "genus",
    "intersection_form",
    "pairing",
    "surface_framing",
    "disjoint",
    "slide_handle_foot",
    "relabel",
    "canonical_word",
    "cyclic_equal",
    "count_cycles",
]

H0 = 0


class FiberError(ValueError):
    pass


def relabel(word: Sequence[int]) -> tuple[int, ...]:
    """Rename labels 1, 2, ... in order of first appearance."""
    names: dict[int, int] = {}
    out = []
    for x in word:
        if x not in names:
            names[x] = len(names) + 1
        out.append(names[x])
    return tuple(out)


def canonical_word(word: Sequence[int], reflect: bool = False) -> tuple[int, ...]:
    """Least relabeled rotation (and, with ``reflect``, reversal)."""
    w = list(word)
    if not w:
        return ()
    seqs = [w, w[::-1]] if reflect else [w]
    return min(relabel(s[i:] + s[:i]) for s in seqs for i in range(len(s)))


def cyclic_equal(a: Sequence[int], b: Sequence[int], reflect: bool = False) -> bool:
    return canonical_word(a, reflect) == canonical_word(b, reflect)


def count_cycles(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for s in range(len(perm)):
        if seen[s]:
            continue
        cycles += 1
        p = s
        while not seen[p]:
            seen[p] = True
            p = perm[p]
    return cycles


@dataclass(frozen=True)
class RibbonFiber:
    word: tuple[int, ...]
    ends: tuple[int, ...]
    base: str = "disk"

    def __post_init__(self):
        if len(self.word) != len(self.ends):
            raise FiberError("word and ends differ in length")
        seen: dict[int, list[int]] = {}
        for lab, e in zip(self.word, self.ends):
            seen.setdefault(lab, []).append(e)
        for lab, es in seen.items():
            if sorted(es) != [-1, 1]:
                raise FiberError(f"label {lab} must appear exactly twice, once per end")
        if self.base == "annulus" and H0 not in seen:
            raise FiberError("annulus base needs the distinguished handle 0")
        if self.base not in ("disk", "annulus"):
            raise FiberError(f"unknown base {self.base!r}")

    @property
    def handles(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.word)))

    @property
    def k_total(self) -> int:
        return len(self.word) // 2

    @property
    def k(self) -> int:
        """1-handles apart from h0."""
        return self.k_total - (1 if self.base == "annulus" else 0)

    def index(self, label: int) -> int:
        return self.handles.index(label)

    def positions(self, label: int) -> tuple[int, int]:
        """(in-foot position, out-foot position)."""
        pin = pout = -1
        for p, (lab, e) in enumerate(zip(self.word, self.ends)):
            if lab == label:
                if e > 0:
                    pin = p
                else:
                    pout = p
        return pin, pout

    def partner(self) -> list[int]:
        m = len(self.word)
        where: dict[int, list[int]] = {}
        for p, lab in enumerate(self.word):
            where.setdefault(lab, []).append(p)
        out = [0] * m
        for a, b in where.values():
            out[a], out[b] = b, a
        return out

    @property
    def chi(self) -> int:
        return 1 - self.k_total

    @property
    def b(self) -> int:
        m = len(self.word)
        if m == 0:
            return 1
        part = self.partner()
        return count_cycles([part[(p + 1) % m] for p in range(m)])

    @property
    def g(self) -> int:
        two_g = 2 - self.b - self.chi
        assert two_g % 2 == 0 and two_g >= 0, "ribbon surface parity"
        return two_g // 2

    def basis_vector(self, label: int, coeff: int = 1) -> tuple[int, ...]:
        v = [0] * self.k_total
        v[self.index(label)] = coeff
        return tuple(v)


def from_boundary_word(word: Iterable[int], base: str = "disk",
                       ends: Iterable[int] | None = None) -> RibbonFiber:
    """Build a fiber from a word; without ``ends`` the first appearance of a
    label is taken as its in-foot."""
    word = tuple(int(x) for x in word)
    if ends is None:
        seen = set()
        e = []
        for x in word:
            e.append(-1 if x in seen else 1)
            seen.add(x)
        ends = e
    return RibbonFiber(word, tuple(ends), base)


def euler_characteristic(f: RibbonFiber) -> int:
    return f.chi


def boundary_components(f: RibbonFiber) -> int:
    return f.b


def genus(f: RibbonFiber) -> int:
    return f.g


def _omega(f: RibbonFiber, i: int, j: int) -> int:
    if i == j:
        return 0
    m = len(f.word)
    iin, iout = f.positions(i)
    jin, jout = f.positions(j)

    def between(p):  # strictly after iin and before iout, going forward
        return 0 < (p - iin) % m < (iout - iin) % m

    a, b = between(jin), between(jout)
    if a == b:
        return 0
    return 1 if a else -1


def intersection_form(f: RibbonFiber) -> tuple[tuple[int, ...], ...]:
    hs = f.handles
    return tuple(tuple(_omega(f, i, j) for j in hs) for i in hs)


@dataclass(frozen=True)
class Curve:
    """A closed curve on a fiber.

    ``traversals`` lists (handle, +-1) in the order the curve crosses bands
    (+1 = from in-foot to out-foot); ``embedding`` records the projection
    data used for the surface framing as (kind, sign) pairs.  Curves built
    by Hurwitz moves may carry only a class (``homology_only``).
    """

    name: str
    homology: tuple[int, ...]
    traversals: tuple[tuple[int, int], ...] = ()
    embedding: tuple[tuple[str, int], ...] | None = None
    homology_only: bool = False
    framing: int | None = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_traversals(cls, f: RibbonFiber, name: str, trav, embedding=None, **kw) -> "Curve":
        v = [0] * f.k_total
        for lab, s in trav:
            v[f.index(lab)] += s
        return cls(name, tuple(v), tuple(trav), embedding, **kw)


def _vec(f: RibbonFiber, x) -> tuple[int, ...]:
    v = x.homology if isinstance(x, Curve) else tuple(x)
    if len(v) != f.k_total:
        raise FiberError("class does not live on this fiber")
    return v


def pairing(f: RibbonFiber, a, b) -> int:
    om = intersection_form(f)
    u, v = _vec(f, a), _vec(f, b)
    return sum(u[i] * om[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


def surface_framing(f: RibbonFiber, c: Curve) -> int:
    if c.embedding is None:
        raise FiberError(f"curve {c.name} has no planar embedding")
    return sum(s for _, s in c.embedding)


def _disk_arcs(f: RibbonFiber, c: Curve) -> list[tuple[int, int]]:
    arcs = []
    t = c.traversals
    for idx, (lab, s) in enumerate(t):
        pin, pout = f.positions(lab)
        exit_p = pout if s > 0 else pin
        nlab, ns = t[(idx + 1) % len(t)]
        nin, nout = f.positions(nlab)
        arcs.append((exit_p, nin if ns > 0 else nout))
    return arcs


def disjoint(f: RibbonFiber, a: Curve, b: Curve) -> bool:
    """Combinatorial certificate that a and b have disjoint representatives."""
    if a.homology_only or b.homology_only or not a.traversals or not b.traversals:
        return False
    if {h for h, _ in a.traversals} & {h for h, _ in b.traversals}:
        return False
    m = len(f.word)
    for p, q in _disk_arcs(f, a):
        for r, s in _disk_arcs(f, b):
            inside = lambda x: 0 < (x - p) % m < (q - p) % m
            if inside(r) != inside(s):
                return False
    return True


def slide_handle_foot(f: RibbonFiber, i: int, j: int, end: int | None = None):
    """Slide a foot of handle i, adjacent to a foot of j, across handle j.

    Returns the new fiber and the basis matrix M whose columns are the new
    basis classes written in the old basis (so the new form is M^T Omega M).
    """
    m = len(f.word)
    if i == j:
        raise FiberError("a handle cannot slide over itself")
    choices = []
    for p in range(m):
        if f.word[p] != i or (end is not None and f.ends[p] != end):
            continue
        for d in (1, -1):
            q = (p + d) % m
            if f.word[q] == j:
                choices.append((p, q, d))
    if not choices:
        raise FiberError(f"no foot of {i} is adjacent to a foot of {j}")
    p, q, d = choices[0]
    other = next(x for x in range(m) if f.word[x] == j and x != q)
    tok = (f.word[p], f.ends[p])
    rest = [(f.word[x], f.ends[x]) for x in range(m) if x != p]
    o = rest.index((f.word[other], f.ends[other]))
    # before j1 -> lands after j2; after j1 -> lands before j2
    at = o + 1 if d == 1 else o
    rest.insert(at, tok)
    g = RibbonFiber(tuple(x for x, _ in rest), tuple(e for _, e in rest), f.base)
    # the core of i now also runs across j, from j1 to j2 or back
    j1_in = f.ends[q] > 0
    moved_out = f.ends[p] < 0
    coeff = (1 if j1_in else -1) if moved_out else (1 if not j1_in else -1)
    k = f.k_total
    M = [[1 if r == c else 0 for c in range(k)] for r in range(k)]
    M[f.index(j)][f.index(i)] = coeff
    return g, tuple(tuple(row) for row in M)

"""Build a PALF from a grid diagram.

The sweep visits lifted columns in order (left to right, or right to left
for ``rtl``).  Each foot of a lifted vertical gets a notch: a slit along
the rows, or, outside the comb strategy, a push along its column.  A foot
that cannot be reached because an unlifted vertical is in the way forces
that vertical to be lifted too, and the sweep restarts.

After the sweep, flex and rtl reconsider the feet at trailing corners,
where a slit and a push are both legal: the choice maximizing the number
of boundary components wins, ties going to fewer pushes and then to a
fixed canonical word class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import scene as S
from .fiber import Curve, RibbonFiber, canonical_word, cyclic_equal, from_boundary_word
from .grid import GridDiagram, corner_tag, crossings, legendrian_invariants, rotate180, sw_stabilize_ne
from .monodromy import MonodromyFactorization

__all__ = [
    "STRATEGIES",
    "ConstructionError",
    "PALF",
    "base_lifts",
    "decide_lifts",
    "construct_palf",
    "embed_c0",
    "rtl_equivalence_check",
    "stabilize_ne_corners",
]

STRATEGIES = ("comb", "flex", "rtl")


class ConstructionError(RuntimeError):
    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


def _sweep(strategy: str) -> int:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    return -1 if strategy == "rtl" else 1


def base_lifts(g: GridDiagram, strategy: str = "flex") -> set[int]:
    """Columns lifted by rules (a) and (b): a leading corner (NW on top, or SE
    at the bottom for rtl) or a crossing with some horizontal."""
    sweep = _sweep(strategy)
    out = set()
    for c in range(1, g.n + 1):
        top, bot = g.vertical(c)
        if sweep > 0 and corner_tag(g, c, "top") == "NW":
            out.add(c)
        if sweep < 0 and corner_tag(g, c, "bottom") == "SE":
            out.add(c)
        if any(g.h_spans(r, c) for r in range(top + 1, bot)):
            out.add(c)
    return out


def _order(g: GridDiagram, lifted, sweep: int):
    cols = sorted(lifted, reverse=sweep < 0)
    ends = ("top", "bottom") if sweep > 0 else ("bottom", "top")
    return [(c, e) for c in cols for e in ends]


class _Restart(Exception):
    def __init__(self, column: int, c: int, end: str):
        self.args = (column, c, end)


def _pick_feet(g: GridDiagram, lifted, strategy: str, sweep: int, budget: int = 20000):
    """Choose one option per foot, in preference order, with no two notches
    meeting.  A foot whose slit is blocked by unlifted columns asks for a
    restart at once; a foot that is only crowded out by earlier choices
    makes the search back up and revise those."""
    pushes = strategy != "comb"
    feet = _order(g, lifted, sweep)
    table = [S.foot_options(g, lifted, c, end, sweep, pushes) for c, end in feet]
    chosen: list[S.FootOption] = []
    stuck = [None]
    nodes = [0]

    def go(i: int) -> bool:
        if i == len(feet):
            return True
        nodes[0] += 1
        if nodes[0] > budget:
            return False
        opts, blockers = table[i]
        c, end = feet[i]
        fits = [o for o in opts if not any(S.rects_meet(o.notch.rect, p.notch.rect) for p in chosen)]
        if not fits:
            if blockers:
                raise _Restart(max(blockers) if sweep > 0 else min(blockers), c, end)
            if stuck[0] is None or i > stuck[0][0]:
                stuck[0] = (i, c, end)
            return False
        for o in fits:
            chosen.append(o)
            if go(i + 1):
                return True
            chosen.pop()
        return False

    if go(0):
        return chosen
    _, c, end = stuck[0] if stuck[0] else (0, feet[0][0], feet[0][1])
    raise ConstructionError(f"{strategy}: the {end} endpoint of column {c} cannot be reached", column=c)


def _greedy(g: GridDiagram, strategy: str):
    sweep = _sweep(strategy)
    lifted = base_lifts(g, strategy)
    log = []
    for _ in range(g.n + 1):
        try:
            return lifted, _pick_feet(g, lifted, strategy, sweep), log
        except _Restart as r:
            col, c, end = r.args
        lifted.add(col)
        log.append(f"lift column {col}: blocks the {end} endpoint of column {c}")
    raise ConstructionError("restart cap exceeded")


def decide_lifts(g: GridDiagram, strategy: str = "flex") -> frozenset[int]:
    return frozenset(_greedy(g, strategy)[0])


# -- trailing-corner refinement ----------------------------------------


def _cycles_batch(perm: np.ndarray) -> np.ndarray:
    """Number of cycles of each row of a batch of permutations."""
    rows, m = perm.shape
    # work on one flat array: row i occupies slots i*m .. i*m+m-1
    P = (perm + (np.arange(rows, dtype=np.int64) * m)[:, None]).ravel()
    lab = np.tile(np.arange(m, dtype=np.int64), rows)
    steps = max(1, int(np.ceil(np.log2(max(m, 2)))) + 1)
    for _ in range(steps):
        lab = np.minimum(lab, lab[P])
        P = P[P]
    return (lab.reshape(rows, m) == np.arange(m)).sum(axis=1)


def _refine(g: GridDiagram, lifted, chosen: list[S.FootOption], sweep: int) -> list[S.FootOption]:
    W = S.U * (g.n + 1)
    alts: list[S.FootOption | None] = []
    for o in chosen:
        alt = None
        if not S.lead_corner(g, o.column, o.end, sweep):
            opts, _ = S.foot_options(g, lifted, o.column, o.end, sweep, True)
            kinds = {x.kind: x for x in opts}
            if len(kinds) == 2:
                alt = kinds["push" if o.kind == "slit" else "slit"]
        alts.append(alt)
    free = [i for i, a in enumerate(alts) if a is not None]
    nf = len(free)
    if nf == 0:
        return chosen
    F = len(chosen)
    cand = [[o] + ([alts[i]] if alts[i] is not None else []) for i, o in enumerate(chosen)]
    fpos = {f: j for j, f in enumerate(free)}

    masks = np.arange(1 << nf, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(nf)) & 1).astype(bool)
    valid = np.ones(len(masks), dtype=bool)
    for a in range(F):
        for b in range(a + 1, F):
            for x, oa in enumerate(cand[a]):
                for y, ob in enumerate(cand[b]):
                    if not S.rects_meet(oa.notch.rect, ob.notch.rect):
                        continue
                    cond = np.ones(len(masks), dtype=bool)
                    if a in fpos:
                        cond &= bits[:, fpos[a]] == bool(x)
                    if b in fpos:
                        cond &= bits[:, fpos[b]] == bool(y)
                    valid &= ~cond
    masks, bits = masks[valid], bits[valid]

    k0 = np.array([c[0].notch.key(W) for c in cand])
    k1 = np.array([c[-1].notch.key(W) for c in cand])
    keys = np.broadcast_to(k0, (len(masks), F)).copy()
    for j, f in enumerate(free):
        keys[:, f] = np.where(bits[:, j], k1[f], k0[f])
    order = np.argsort(keys, axis=1, kind="stable")
    pos = np.empty_like(order)
    np.put_along_axis(pos, order, np.broadcast_to(np.arange(F), order.shape), axis=1)
    col = [c[0].column for c in cand]
    mate = np.array([next(j for j in range(F) if j != i and col[j] == col[i]) for i in range(F)])
    nxt = np.roll(order, -1, axis=1)
    perm = np.take_along_axis(pos, mate[nxt], axis=1)
    b = _cycles_batch(perm)

    is_push0 = np.array([c[0].kind == "push" for c in cand])
    is_push1 = np.array([c[-1].kind == "push" for c in cand])
    pushes = np.broadcast_to(is_push0, (len(masks), F)).copy()
    for j, f in enumerate(free):
        pushes[:, f] = np.where(bits[:, j], is_push1[f], is_push0[f])
    npush = pushes.sum(axis=1)

    best = b == b.max()
    idx = np.nonzero(best)[0]
    mp = npush[idx].min()
    colarr = np.array(col)

    def word(i):
        return tuple(int(x) for x in colarr[order[i]])

    cls = min(canonical_word(word(i), reflect=True) for i in idx[npush[idx] == mp])

    def enum_key(i):
        on = tuple(j for j in range(nf) if bits[i, j])
        return (len(on), on)

    for i in sorted(idx.tolist(), key=enum_key):
        if canonical_word(word(i), reflect=True) == cls:
            return [cand[f][1 if (f in fpos and bits[i, fpos[f]]) else 0] for f in range(F)]
    raise AssertionError("no candidate in the chosen class")  # pragma: no cover


# -- assembly ----------------------------------------------------------


@dataclass(frozen=True)
class PALF:
    grid: GridDiagram
    strategy: str
    base: str
    lifts: tuple[int, ...]
    fiber: RibbonFiber
    cycles: tuple[Curve, ...]  # C_i in column order
    c0_curves: tuple[Curve, ...]
    factorization: MonodromyFactorization
    scene: S.Scene
    gamma: tuple | None = None
    log: tuple[str, ...] = ()
    include_c0: bool = True
    options: tuple = field(default=(), compare=False, repr=False)

    @property
    def word(self) -> tuple[int, ...]:
        return self.fiber.word

    @property
    def k(self) -> int:
        return len(self.lifts)


def _assemble(g: GridDiagram, strategy: str, lifted, chosen) -> S.Scene:
    sweep = _sweep(strategy)
    s = S.init_scene(g, "annulus" if g.hole is not None else "disk", sweep)
    per_col: dict[int, int] = {}
    for o in chosen:
        try:
            s = S.place_option(s, o)
        except S.SceneError as exc:
            raise ConstructionError(f"column {o.column}: {exc}", column=o.column) from None
        per_col[o.column] = per_col.get(o.column, 0) + 1
        if per_col[o.column] == 2:
            s = S.attach_handle(s, o.column)
    return s


def _gamma(s: S.Scene):
    """A straight cut from the hole to the square's edge avoiding every notch.

    Returns (direction, rect, perimeter key)."""
    g = s.grid
    hr, hc = g.hole
    x, y, W = S.U * hc, S.U * hr, s.W
    rays = {
        "up": ((x, 0, x, y - 2), W - x),
        "down": ((x, y + 2, x, W), 2 * W + x),
        "left": ((0, y, x - 2, y), W + y),
        "right": ((x + 2, y, W, y), 4 * W - y),
    }
    for d in ("up", "down", "left", "right"):
        rect, key = rays[d]
        if not any(S.rects_meet(rect, nt.rect) for nt in s.notches):
            return d, rect, key
    raise ConstructionError("no cut from the hole to the boundary avoids the feet")


def _walk(g: GridDiagram, k: int):
    """Segments of component k in travel order: ('H', r, from, to) / ('V', c, from, to)."""
    segs = []
    for r in g.components[k - 1]:
        a, b = g.xs[r - 1], g.os[r - 1]
        segs.append(("H", r, a, b))
        segs.append(("V", b, r, g.x_row(b)))
    return segs


def _gamma_hits(g: GridDiagram, seg, gamma) -> int:
    """Signed crossing of a segment with the cut; counterclockwise travel
    around the hole counts +1."""
    if gamma is None:
        return 0
    d, rect, _ = gamma
    hr, hc = g.hole
    kind, at, a, b = seg
    lo, hi = min(a, b), max(a, b)
    if kind == "H" and d in ("up", "down"):
        if lo < hc < hi and ((d == "up" and at < hr) or (d == "down" and at > hr)):
            step = 1 if b > a else -1
            return -step if d == "up" else step
    if kind == "V" and d in ("left", "right"):
        if lo < hr < hi and ((d == "left" and at < hc) or (d == "right" and at > hc)):
            step = 1 if b > a else -1  # +1 = downward in the picture
            return step if d == "left" else -step
    return 0


def embed_c0(s: S.Scene, component: int, gamma=None, fiber: RibbonFiber | None = None) -> Curve:
    """C_0k placed on the former guide line: it crosses each lifted handle of
    the component once and h0 wherever the line meets the cut."""
    g = s.grid
    lifted = s.lifted
    trav = []
    for seg in _walk(g, component):
        h = _gamma_hits(g, seg, gamma)
        if h:
            trav.append((0, h))
        if seg[0] == "V" and seg[1] in lifted:
            trav.append((seg[1], g.v_dir(seg[1])))
    emb = [("crossing", x.sign) for x in crossings(g) if x.over == x.under == component]
    for c in sorted(lifted):
        if g.component_of_column(c) != component:
            continue
        lead = corner_tag(g, c, "top") == "NW" if s.sweep > 0 else corner_tag(g, c, "bottom") == "SE"
        if lead:
            emb.append(("cusp", -1))
    inv = legendrian_invariants(g, component)
    name = "C_0" if len(g.components) == 1 else f"C_0{component}"
    if fiber is None:
        labels = sorted({h for h, _ in trav})
        v = [0] * len(labels)
        for h, sgn in trav:
            v[labels.index(h)] += sgn
        return Curve(name, tuple(v), tuple(trav), tuple(emb), framing=inv.framing)
    return Curve.from_traversals(fiber, name, trav, tuple(emb), framing=inv.framing)


def stabilize_ne_corners(g: GridDiagram, strategy: str = "comb") -> GridDiagram:
    """SW-stabilize until no lifted column has an NE corner on top (the
    older pipeline, where every lifted vertical starts at an NW corner)."""
    for _ in range(4 * g.n * g.n):
        ne = [c for c in sorted(decide_lifts(g, strategy)) if corner_tag(g, c, "top") == "NE"]
        if not ne:
            return g
        g = sw_stabilize_ne(g, ne[0])
    raise ConstructionError("stabilization did not terminate")


def construct_palf(g: GridDiagram, strategy: str = "flex", include_c0: bool = True,
                   stabilize: bool = False) -> PALF:
    sweep = _sweep(strategy)
    if stabilize:
        g = stabilize_ne_corners(g, strategy)
    lifted, chosen, log = _greedy(g, strategy)
    if strategy != "comb":
        chosen = _refine(g, lifted, chosen, sweep)
    s = _assemble(g, strategy, lifted, chosen)
    W = s.W
    feet = sorted(s.notches, key=lambda nt: nt.key(W))
    word = [abs(nt.foot) for nt in feet]
    ends = [1 if nt.foot > 0 else -1 for nt in feet]
    # the polygon walk must agree with the perimeter order
    walked = S.boundary_word(s)
    if tuple(walked) != tuple(nt.foot for nt in feet) or not S.is_simple(S.region_polygon(s)):
        raise AssertionError("boundary walk disagrees with the perimeter order")
    gamma = None
    base = "disk"
    if g.hole is not None:
        base = "annulus"
        gamma = _gamma(s)
        at = sum(1 for nt in feet if nt.key(W) < gamma[2])
        word[at:at] = [0, 0]
        ends[at:at] = [1, -1]
    fiber = RibbonFiber(tuple(word), tuple(ends), base)
    cols = sorted(lifted)
    cycles = tuple(Curve.from_traversals(fiber, f"C_{c}", ((c, 1),), (("kink", -1),), framing=-2)
                   for c in cols)
    c0 = tuple(embed_c0(s, k, gamma, fiber) for k in range(1, len(g.components) + 1))
    ordered = tuple(reversed(cycles)) if sweep > 0 else cycles
    fac = MonodromyFactorization(fiber, (c0 if include_c0 else ()) + ordered)
    return PALF(g, strategy, base, tuple(cols), fiber, cycles, c0, fac, s, gamma,
                tuple(log), include_c0, tuple(chosen))


def rtl_equivalence_check(g: GridDiagram) -> bool:
    """Right-to-left on the rotated grid against left-to-right on g.

    Rotation keeps the counterclockwise reading, so the words agree after
    renaming column c as n+1-c; the canonical forms (with reversal allowed)
    must then coincide as well."""
    p = construct_palf(g, "flex", include_c0=False)
    q = construct_palf(rotate180(g), "rtl", include_c0=False)
    n = g.n
    renamed = [n + 1 - x if x else 0 for x in q.fiber.word]
    exact = cyclic_equal(renamed, p.fiber.word) and _cyclic_same(renamed, list(p.fiber.word))
    return exact and canonical_word(q.fiber.word, True) == canonical_word(p.fiber.word, True)


def _cyclic_same(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[i:] + a[:i] == b for i in range(len(a)))

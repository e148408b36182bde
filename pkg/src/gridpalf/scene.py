"""Planar state of the 0-handle while 1-handles are being attached.

The 0-handle is the square ``[0, W] x [0, W]`` with ``W = 8(n+1)``; column c
sits on ``x = 8c`` and row r on ``y = 8r`` (y grows downward, as rows do).
Every deformation is a straight notch cut in from one edge, so the region
is always the square minus a set of disjoint rectangles touching the
boundary.  Feet of 1-handles sit at notch tips; reading the tips along the
boundary counterclockwise gives the boundary word.

Slits run parallel to rows (from the left edge in a left-to-right sweep,
from the right edge in a right-to-left one).  Pushes run parallel to
columns, down from the top edge or up from the bottom edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable

from .grid import GridDiagram, corner_tag

__all__ = [
    "U",
    "SceneError",
    "Notch",
    "FootOption",
    "HandleRect",
    "Scene",
    "init_scene",
    "carve_slit",
    "push_boundary",
    "attach_handle",
    "boundary_word",
    "region_polygon",
    "is_simple",
    "reachable",
    "foot_options",
    "lead_corner",
    "hole_rect",
    "rects_meet",
]

U = 8  # lattice units per grid step
NOTCH_HALF = 1
HOLE_HALF = 2


class SceneError(RuntimeError):
    """An isotopy the rules forbid, or a foot that cannot be reached."""

    def __init__(self, message: str, blocking: tuple[int, ...] = ()):
        super().__init__(message)
        self.blocking = blocking


Rect = tuple[int, int, int, int]  # x0, y0, x1, y1 (closed)


def rects_meet(a: Rect, b: Rect) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def hole_rect(hole: tuple[int, int]) -> Rect:
    r, c = hole
    return (U * c - HOLE_HALF, U * r - HOLE_HALF, U * c + HOLE_HALF, U * r + HOLE_HALF)


@dataclass(frozen=True)
class Notch:
    edge: str  # 'top' | 'left' | 'bottom' | 'right'
    rect: Rect
    foot: int  # signed handle label: +c top foot, -c bottom foot
    passes: tuple[int, ...] = ()  # lifted columns passed underneath

    @property
    def tip(self) -> tuple[int, int]:
        x0, y0, x1, y1 = self.rect
        if self.edge == "left":
            return (x1, (y0 + y1) // 2)
        if self.edge == "right":
            return (x0, (y0 + y1) // 2)
        if self.edge == "top":
            return ((x0 + x1) // 2, y1)
        return ((x0 + x1) // 2, y0)

    def key(self, W: int) -> int:
        """Position of the attaching point along the counterclockwise perimeter,
        starting at the top-right corner."""
        x0, y0, x1, y1 = self.rect
        mx, my = (x0 + x1) // 2, (y0 + y1) // 2
        if self.edge == "top":
            return W - mx
        if self.edge == "left":
            return W + my
        if self.edge == "bottom":
            return 2 * W + mx
        return 3 * W + (W - my)


@dataclass(frozen=True)
class FootOption:
    """One way to bring a foot to the boundary."""

    column: int
    end: str  # 'top' | 'bottom'
    kind: str  # 'slit' | 'push'
    notch: Notch
    blockers: tuple[int, ...] = ()  # unlifted columns in the way

    @property
    def legal(self) -> bool:
        return not self.blockers

    @property
    def passes(self) -> tuple[int, ...]:
        return self.notch.passes


@dataclass(frozen=True)
class HandleRect:
    column: int
    top_foot: Notch
    bottom_foot: Notch
    corner_kind: str  # corner at the top endpoint: 'NW' | 'NE'
    layer: str = "above"


@dataclass(frozen=True)
class Scene:
    grid: GridDiagram
    base: str = "disk"
    sweep: int = 1  # +1 left-to-right, -1 right-to-left
    notches: tuple[Notch, ...] = ()
    handles: tuple[HandleRect, ...] = ()
    lifted: frozenset[int] = frozenset()
    flags: tuple[str, ...] = ()
    passages: tuple[tuple[int, int], ...] = field(default=())  # (foot, column)

    @property
    def W(self) -> int:
        return U * (self.grid.n + 1)

    @property
    def hole(self) -> tuple[int, int] | None:
        return self.grid.hole

    @property
    def guide_arcs(self) -> list[tuple]:
        g = self.grid
        arcs: list[tuple] = [("H", r) + g.horizontal(r) for r in range(1, g.n + 1)]
        arcs += [("V", c) + g.vertical(c) for c in range(1, g.n + 1) if c not in self.lifted]
        return arcs

    @property
    def feet(self) -> list[int]:
        return [nt.foot for nt in sorted(self.notches, key=lambda nt: nt.key(self.W))]


def init_scene(g: GridDiagram, base: str = "disk", sweep: int = 1) -> Scene:
    if base not in ("disk", "annulus"):
        raise ValueError(f"unknown base {base!r}")
    if base == "annulus" and g.hole is None:
        raise SceneError("annulus base needs a hole cell")
    return Scene(g, base, sweep)


# -- geometry of options -----------------------------------------------


def lead_corner(g: GridDiagram, c: int, end: str, sweep: int) -> bool:
    """True if the horizontal leaves this corner in the sweep direction."""
    top, bot = g.vertical(c)
    r = top if end == "top" else bot
    left, _ = g.horizontal(r)
    goes_right = left == c
    return goes_right if sweep > 0 else not goes_right


def _slit_notch(g: GridDiagram, c: int, end: str, sweep: int) -> Notch:
    W = U * (g.n + 1)
    top, bot = g.vertical(c)
    r = top if end == "top" else bot
    if lead_corner(g, c, end, sweep):
        y = U * r
        tip = U * c - 2 * sweep
    else:
        # the gap on the side facing away from the sweep's rotation partner
        y = U * r - 4 * sweep
        tip = U * c
    foot = c if end == "top" else -c
    if sweep > 0:
        return Notch("left", (0, y - NOTCH_HALF, tip, y + NOTCH_HALF), foot)
    return Notch("right", (tip, y - NOTCH_HALF, W, y + NOTCH_HALF), foot)


def _push_notch(g: GridDiagram, c: int, end: str) -> Notch:
    W = U * (g.n + 1)
    top, bot = g.vertical(c)
    x = U * c
    if end == "top":
        return Notch("top", (x - NOTCH_HALF, 0, x + NOTCH_HALF, U * top - 2), c)
    return Notch("bottom", (x - NOTCH_HALF, U * bot + 2, x + NOTCH_HALF, W), -c)


def _vertical_rect(g: GridDiagram, c: int) -> Rect:
    top, bot = g.vertical(c)
    return (U * c, U * top, U * c, U * bot)


def _horizontal_rect(g: GridDiagram, r: int) -> Rect:
    a, b = g.horizontal(r)
    return (U * a, U * r, U * b, U * r)


def _slit_option(g: GridDiagram, lifted: Iterable[int], c: int, end: str, sweep: int) -> FootOption | None:
    lifted = set(lifted)
    nt = _slit_notch(g, c, end, sweep)
    if g.hole is not None and rects_meet(nt.rect, hole_rect(g.hole)):
        return None
    blockers, passes = [], []
    for c2 in range(1, g.n + 1):
        if c2 == c or not rects_meet(nt.rect, _vertical_rect(g, c2)):
            continue
        (passes if c2 in lifted else blockers).append(c2)
    for r in range(1, g.n + 1):
        if rects_meet(nt.rect, _horizontal_rect(g, r)):
            return None
    # under-passages are listed in the order the slit meets them
    passes.sort(key=lambda x: x * sweep)
    nt = replace(nt, passes=tuple(passes))
    return FootOption(c, end, "slit", nt, tuple(sorted(blockers)))


def _push_option(g: GridDiagram, c: int, end: str) -> FootOption | None:
    nt = _push_notch(g, c, end)
    if g.hole is not None and rects_meet(nt.rect, hole_rect(g.hole)):
        return None
    for r in range(1, g.n + 1):
        if rects_meet(nt.rect, _horizontal_rect(g, r)):
            return None
    return FootOption(c, end, "push", nt)


def foot_options(g: GridDiagram, lifted: Iterable[int], c: int, end: str,
                 sweep: int = 1, pushes: bool = True) -> tuple[list[FootOption], tuple[int, ...]]:
    """Options for one foot in preference order, plus the columns blocking the slit.

    Preference: a slit that passes under nothing, then a push, then a slit
    passing under already lifted handles.
    """
    slit = _slit_option(g, lifted, c, end, sweep)
    push = _push_option(g, c, end) if pushes else None
    blockers = slit.blockers if slit is not None else ()
    out = []
    if slit is not None and slit.legal and not slit.passes:
        out.append(slit)
    if push is not None:
        out.append(push)
    if slit is not None and slit.legal and slit.passes:
        out.append(slit)
    return out, blockers


# -- scene operations --------------------------------------------------


def _check_notch(s: Scene, nt: Notch) -> None:
    g = s.grid
    if g.hole is not None and rects_meet(nt.rect, hole_rect(g.hole)):
        raise SceneError("notch would cross the hole")
    for other in s.notches:
        if rects_meet(nt.rect, other.rect):
            raise SceneError(f"notch meets the notch of foot {other.foot}")
    for arc in s.guide_arcs:
        if arc[0] == "V" and arc[1] == abs(nt.foot):
            continue  # a foot may touch its own segment
        rect = _horizontal_rect(g, arc[1]) if arc[0] == "H" else _vertical_rect(g, arc[1])
        if rects_meet(nt.rect, rect):
            raise SceneError(f"notch blocked by guide arc {arc[0]}{arc[1]}",
                             blocking=(arc[1],) if arc[0] == "V" else ())


def _level_y(level: float) -> int:
    y2 = round(2 * level)
    if abs(2 * level - y2) > 1e-9:
        raise ValueError("slit level must be a row or a half row")
    return U * y2 // 2


def carve_slit(s: Scene, level: float, side: str, depth: int, foot: int = 0) -> Scene:
    """Cut a slit parallel to the rows at height ``level`` (a row, or a row
    +- 1/2 for the gap between rows) reaching column ``depth``."""
    g = s.grid
    W = s.W
    y = _level_y(level)
    on_row = y % U == 0
    if side == "left":
        tip = U * depth - (2 if on_row else 0)
        nt = Notch("left", (0, y - NOTCH_HALF, tip, y + NOTCH_HALF), foot)
    elif side == "right":
        tip = U * depth + (2 if on_row else 0)
        nt = Notch("right", (tip, y - NOTCH_HALF, W, y + NOTCH_HALF), foot)
    else:
        raise ValueError(f"side must be left or right, not {side!r}")
    passes = sorted((c for c in s.lifted if rects_meet(nt.rect, _vertical_rect(g, c))),
                    key=lambda x: x if side == "left" else -x)
    if passes and (side == "left") != (s.sweep > 0):
        raise SceneError("passing under a 1-handle is only allowed in the sweep direction "
                         "(left to right)" if s.sweep > 0 else "(right to left)")
    nt = replace(nt, passes=tuple(passes))
    _check_notch(s, nt)
    return replace(s, notches=s.notches + (nt,),
                   passages=s.passages + tuple((foot, c) for c in passes))


def push_boundary(s: Scene, column: int, direction: str, depth: int, foot: int = 0) -> Scene:
    """Push the boundary along a column ('down' from the top edge to just above
    row ``depth``, 'up' from the bottom edge), or along a row
    ('left-to-right' / 'right-to-left', then ``column`` is the tip column and
    ``depth`` the row level)."""
    if direction in ("left-to-right", "right-to-left"):
        side = "left" if direction == "left-to-right" else "right"
        return carve_slit(s, depth, side, column, foot)
    W = s.W
    x = U * column
    if direction == "down":
        nt = Notch("top", (x - NOTCH_HALF, 0, x + NOTCH_HALF, U * depth - 2), foot)
    elif direction == "up":
        nt = Notch("bottom", (x - NOTCH_HALF, U * depth + 2, x + NOTCH_HALF, W), foot)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    _check_notch(s, nt)
    return replace(s, notches=s.notches + (nt,))


def place_option(s: Scene, opt: FootOption) -> Scene:
    nt = opt.notch
    if nt.edge in ("left", "right"):
        x0, y0, x1, y1 = nt.rect
        level = ((y0 + y1) // 2) / U
        tipc = opt.column
        return carve_slit(s, level, nt.edge, tipc, nt.foot)
    top, bot = s.grid.vertical(opt.column)
    if nt.edge == "top":
        return push_boundary(s, opt.column, "down", top, nt.foot)
    return push_boundary(s, opt.column, "up", bot, nt.foot)


def _foot_points(g: GridDiagram, c: int, end: str) -> set[tuple[int, int]]:
    top, bot = g.vertical(c)
    r = top if end == "top" else bot
    x, y = U * c, U * r
    return {(x - 2, y), (x + 2, y), (x, y - 4), (x, y + 4), (x, y - 2), (x, y + 2)}


def attach_handle(s: Scene, column: int) -> Scene:
    g = s.grid
    found = {}
    for end in ("top", "bottom"):
        pts = _foot_points(g, column, end)
        want = column if end == "top" else -column
        hits = [nt for nt in s.notches if nt.tip in pts and nt.foot == want]
        if not hits:
            raise SceneError(f"{end} endpoint of column {column} is not on the boundary")
        found[end] = hits[0]
    flags = s.flags
    if column == (g.n if s.sweep > 0 else 1):
        flags = flags + (f"column {column} is never lifted by the construction",)
    h = HandleRect(column, found["top"], found["bottom"], corner_tag(g, column, "top"))
    return replace(s, handles=s.handles + (h,), lifted=s.lifted | {column}, flags=flags)


# -- boundary ----------------------------------------------------------


def region_polygon(s: Scene) -> list[tuple[int, int]]:
    """Vertices of the region, counterclockwise in the picture, starting at the
    top-right corner."""
    W = s.W
    by_edge: dict[str, list[Notch]] = {"top": [], "left": [], "bottom": [], "right": []}
    for nt in s.notches:
        by_edge[nt.edge].append(nt)
    pts: list[tuple[int, int]] = [(W, 0)]
    for nt in sorted(by_edge["top"], key=lambda t: -t.rect[0]):
        x0, _, x1, y1 = nt.rect
        pts += [(x1, 0), (x1, y1), (x0, y1), (x0, 0)]
    pts.append((0, 0))
    for nt in sorted(by_edge["left"], key=lambda t: t.rect[1]):
        _, y0, x1, y1 = nt.rect
        pts += [(0, y0), (x1, y0), (x1, y1), (0, y1)]
    pts.append((0, W))
    for nt in sorted(by_edge["bottom"], key=lambda t: t.rect[0]):
        x0, y0, x1, _ = nt.rect
        pts += [(x0, W), (x0, y0), (x1, y0), (x1, W)]
    pts.append((W, W))
    for nt in sorted(by_edge["right"], key=lambda t: -t.rect[1]):
        x0, y0, _, y1 = nt.rect
        pts += [(W, y1), (x0, y1), (x0, y0), (W, y0)]
    return pts


def _seg_meet(p, q, r, s) -> bool:
    # axis-parallel closed segments
    ax0, ax1 = sorted((p[0], q[0]))
    ay0, ay1 = sorted((p[1], q[1]))
    bx0, bx1 = sorted((r[0], s[0]))
    by0, by1 = sorted((r[1], s[1]))
    return ax0 <= bx1 and bx0 <= ax1 and ay0 <= by1 and by0 <= ay1


def is_simple(poly: list[tuple[int, int]]) -> bool:
    """Self-intersection test for a rectilinear polygon (exact)."""
    m = len(poly)
    edges = [(poly[i], poly[(i + 1) % m]) for i in range(m)]
    edges = [e for e in edges if e[0] != e[1]]
    m = len(edges)
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            if _seg_meet(*edges[i], *edges[j]):
                return False
    return True


def boundary_word(s: Scene) -> tuple[int, ...]:
    """Signed foot labels met along the boundary, counterclockwise from the
    top-right corner."""
    poly = region_polygon(s)
    tips = {nt.tip: nt.foot for nt in s.notches}
    out = []
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        mid = ((a[0] + b[0]) // 2, (a[1] + b[1]) // 2)
        # a tip edge is the short edge of a notch, of length 2 * NOTCH_HALF
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 2 * NOTCH_HALF and mid in tips:
            out.append(tips[mid])
    return tuple(out)


# -- reachability --------------------------------------------------------


def reachable(s: Scene, target: tuple[int, int], mode: str = "flex") -> bool:
    """Can the boundary be pushed to the lattice point ``target``?

    Breadth-first search on the lattice of spacing 2.  Unlifted guide arcs
    and the hole are walls; a lifted vertical may be crossed only in the
    sweep direction.  In 'comb' mode the boundary only moves parallel to the
    rows, entering from the sweep's starting edge.
    """
    g = s.grid
    W = s.W
    step = 2
    lifted_v = {c: g.vertical(c) for c in s.lifted}
    unlifted = []
    for arc in s.guide_arcs:
        unlifted.append(_horizontal_rect(g, arc[1]) if arc[0] == "H" else _vertical_rect(g, arc[1]))
    hole = hole_rect(g.hole) if g.hole is not None else None

    def wall(p) -> bool:
        if p == target:
            return False
        if hole is not None and rects_meet((p[0], p[1], p[0], p[1]), hole):
            return True
        return any(rects_meet((p[0], p[1], p[0], p[1]), r) for r in unlifted)

    def on_lifted(p) -> bool:
        if p[0] % U:
            return False
        c = p[0] // U
        if c not in lifted_v:
            return False
        top, bot = lifted_v[c]
        return U * top <= p[1] <= U * bot

    if mode == "comb":
        starts = [(0 if s.sweep > 0 else W, y) for y in range(0, W + 1, step)]
        moves = [(step * s.sweep, 0)]
    else:
        starts = [(x, 0) for x in range(0, W + 1, step)] + [(x, W) for x in range(0, W + 1, step)]
        starts += [(0, y) for y in range(0, W + 1, step)] + [(W, y) for y in range(0, W + 1, step)]
        moves = [(step, 0), (-step, 0), (0, step), (0, -step)]
    seen = set()
    dq = deque()
    for p in starts:
        if not wall(p) and not on_lifted(p):
            seen.add(p)
            dq.append(p)
    while dq:
        p = dq.popleft()
        if p == target:
            return True
        for dx, dy in moves:
            q = (p[0] + dx, p[1] + dy)
            if not (0 <= q[0] <= W and 0 <= q[1] <= W) or q in seen or wall(q):
                continue
            if on_lifted(q) or on_lifted(p):
                # only a crossing in the sweep direction
                if dy != 0 or dx * s.sweep < 0:
                    continue
            seen.add(q)
            dq.append(q)
    return False

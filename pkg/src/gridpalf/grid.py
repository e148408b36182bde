"""Knots and links in grid position.

Rows are numbered 1..n from the top, columns 1..n from the left.  Row r
holds an X in column ``xs[r-1]`` and an O in column ``os[r-1]``.  Each
horizontal segment is oriented X -> O, each vertical segment O -> X, and
vertical segments always pass over horizontal ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "GridError",
    "GridDiagram",
    "Crossing",
    "CornerCensus",
    "LegendrianInvariants",
    "parse_grid",
    "format_grid",
    "writhe",
    "crossings",
    "corner_census",
    "legendrian_invariants",
    "linking_numbers",
    "corner_tag",
    "winding_number",
    "sw_stabilize_ne",
    "vertical_translate",
    "horizontal_translate",
    "rotate180",
]


class GridError(ValueError):
    """Invalid grid data.  ``line`` is the 1-based source line, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class GridDiagram:
    n: int
    xs: tuple[int, ...]
    os: tuple[int, ...]
    hole: tuple[int, int] | None = None
    # component index (1-based) -> framing override
    framings: tuple[tuple[int, int], ...] = ()
    _components: tuple[tuple[int, ...], ...] = field(
        default=(), init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(int(c) for c in self.xs))
        object.__setattr__(self, "os", tuple(int(c) for c in self.os))
        _validate(self)
        object.__setattr__(self, "_components", _orbits(self))

    # -- segments -----------------------------------------------------
    def horizontal(self, r: int) -> tuple[int, int]:
        """(left, right) columns of row r."""
        a, b = self.xs[r - 1], self.os[r - 1]
        return (a, b) if a < b else (b, a)

    def vertical(self, c: int) -> tuple[int, int]:
        """(top, bottom) rows of column c."""
        a, b = self.x_row(c), self.o_row(c)
        return (a, b) if a < b else (b, a)

    def x_row(self, c: int) -> int:
        return self.xs.index(c) + 1

    def o_row(self, c: int) -> int:
        return self.os.index(c) + 1

    def h_dir(self, r: int) -> int:
        """+1 if row r's horizontal runs rightward (X left of O)."""
        return 1 if self.os[r - 1] > self.xs[r - 1] else -1

    def v_dir(self, c: int) -> int:
        """+1 if column c's vertical runs downward (O above X)."""
        return 1 if self.x_row(c) > self.o_row(c) else -1

    def h_spans(self, r: int, c: int) -> bool:
        a, b = self.horizontal(r)
        return a < c < b

    def v_spans(self, c: int, r: float) -> bool:
        a, b = self.vertical(c)
        return a < r < b

    # -- components ---------------------------------------------------
    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Rows of each component in traversal order, starting at its top row."""
        return self._components

    def component_of_row(self, r: int) -> int:
        for i, rows in enumerate(self._components, start=1):
            if r in rows:
                return i
        raise KeyError(r)

    def component_of_column(self, c: int) -> int:
        return self.component_of_row(self.x_row(c))

    def framing_override(self, k: int) -> int | None:
        return dict(self.framings).get(k)


def _validate(g: GridDiagram) -> None:
    n = g.n
    if n < 1:
        raise GridError("grid size must be positive")
    perm = set(range(1, n + 1))
    if len(g.xs) != n or set(g.xs) != perm:
        raise GridError("X markers do not form a permutation")
    if len(g.os) != n or set(g.os) != perm:
        raise GridError("O markers do not form a permutation")
    for r in range(1, n + 1):
        if g.xs[r - 1] == g.os[r - 1]:
            raise GridError(f"X/O collision row {r}")
    if g.hole is not None:
        hr, hc = g.hole
        if not (1 <= hr <= n and 1 <= hc <= n):
            raise GridError(f"hole {g.hole} outside the grid")
        if g.xs[hr - 1] == hc or g.os[hr - 1] == hc:
            raise GridError(f"hole {g.hole} holds a marker")
        if g.h_spans(hr, hc) or g.v_spans(hc, hr):
            raise GridError(f"hole {g.hole} is crossed by a segment")


def _orbits(g: GridDiagram) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    out = []
    for start in range(1, g.n + 1):
        if start in seen:
            continue
        rows = []
        r = start
        while r not in seen:
            seen.add(r)
            rows.append(r)
            # horizontal X -> O, then vertical O -> X
            r = g.x_row(g.os[r - 1])
        out.append(tuple(rows))
    return tuple(out)


# -- file format -------------------------------------------------------


def parse_grid(text: str) -> GridDiagram:
    n = None
    xs = os = None
    hole = None
    framings: dict[int, int | str] = {}
    lines_of: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        try:
            if head == "grid":
                if n is not None or len(rest) != 1:
                    raise GridError("malformed header", lineno)
                n = int(rest[0])
                if n < 1:
                    raise GridError("grid size must be positive", lineno)
            elif head in ("X", "O"):
                if n is None:
                    raise GridError("marker row before header", lineno)
                cols = [int(t) for t in rest]
                if len(cols) != n or sorted(cols) != list(range(1, n + 1)):
                    raise GridError(f"{head} row is not a permutation of 1..{n}", lineno)
                if head == "X":
                    xs = cols
                else:
                    os = cols
                lines_of[head] = lineno
            elif head == "hole":
                if len(rest) != 2:
                    raise GridError("hole needs <row> <col>", lineno)
                hole = (int(rest[0]), int(rest[1]))
                lines_of["hole"] = lineno
            elif head == "framing":
                if len(rest) != 2:
                    raise GridError("framing needs <component> <value>", lineno)
                k = int(rest[0])
                framings[k] = rest[1] if rest[1] == "tb-1" else int(rest[1])
                lines_of[f"framing{k}"] = lineno
            else:
                raise GridError(f"unknown directive {head!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, GridError):
                raise
            raise GridError(f"bad integer ({exc})", lineno) from None
    if n is None:
        raise GridError("missing 'grid <n>' header", 1)
    if xs is None or os is None:
        raise GridError("missing X or O row")
    for r in range(n):
        if xs[r] == os[r]:
            raise GridError(f"X/O collision row {r + 1}", lines_of.get("O"))
    try:
        g = GridDiagram(n, tuple(xs), tuple(os), hole)
    except GridError as exc:
        raise GridError(str(exc), lines_of.get("hole")) from None
    fixed = []
    for k, v in sorted(framings.items()):
        if not 1 <= k <= len(g.components):
            raise GridError(f"no component {k}", lines_of[f"framing{k}"])
        if v != "tb-1":
            fixed.append((k, int(v)))
    if fixed:
        g = GridDiagram(n, g.xs, g.os, hole, tuple(fixed))
    return g


def format_grid(g: GridDiagram) -> str:
    lines = [f"grid {g.n}", "X " + " ".join(map(str, g.xs)), "O " + " ".join(map(str, g.os))]
    if g.hole is not None:
        lines.append(f"hole {g.hole[0]} {g.hole[1]}")
    for k, v in g.framings:
        lines.append(f"framing {k} {v}")
    return "\n".join(lines) + "\n"


# -- crossings ---------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    row: int
    col: int
    sign: int
    over: int  # component of the vertical strand
    under: int  # component of the horizontal strand


def crossings(g: GridDiagram) -> list[Crossing]:
    out = []
    for c in range(1, g.n + 1):
        top, bot = g.vertical(c)
        # y points up in the sign rule, rows grow downward
        dy = -g.v_dir(c)
        kc = g.component_of_column(c)
        for r in range(top + 1, bot):
            if g.h_spans(r, c):
                dx = g.h_dir(r)
                out.append(Crossing(r, c, -dx * dy, kc, g.component_of_row(r)))
    return out


def writhe(g: GridDiagram, component: int | None = None) -> int:
    """Total writhe, or the self-crossing writhe of one component."""
    xs = crossings(g)
    if component is None:
        return sum(x.sign for x in xs)
    return sum(x.sign for x in xs if x.over == x.under == component)


def linking_numbers(g: GridDiagram) -> dict[tuple[int, int], int]:
    m = len(g.components)
    tot = {(i, j): 0 for i in range(1, m + 1) for j in range(i + 1, m + 1)}
    for x in crossings(g):
        if x.over != x.under:
            key = (min(x.over, x.under), max(x.over, x.under))
            tot[key] += x.sign
    return {k: v // 2 for k, v in tot.items()}


def winding_number(g: GridDiagram, component: int, point: tuple[float, float]) -> int:
    """Counterclockwise winding of a component around (row, col) in the picture."""
    pr, pc = point
    w = 0
    rows = set(g.components[component - 1])
    for c in range(1, g.n + 1):
        if g.x_row(c) not in rows or c <= pc:
            continue
        top, bot = g.vertical(c)
        if top < pr < bot:
            # a ray to the right; upward strands (in the picture) count +1
            w += -g.v_dir(c)
    return w


# -- corners -----------------------------------------------------------


@dataclass(frozen=True)
class CornerCensus:
    counts: dict[str, int]
    # column -> (corner at top endpoint, corner at bottom endpoint)
    tags: dict[int, tuple[str, str]]
    per_component: dict[int, dict[str, int]]

    @property
    def nw_columns(self) -> list[int]:
        return [c for c, (t, _) in sorted(self.tags.items()) if t == "NW"]

    @property
    def ne_columns(self) -> list[int]:
        return [c for c, (t, _) in sorted(self.tags.items()) if t == "NE"]


def corner_tag(g: GridDiagram, c: int, end: str) -> str:
    top, bot = g.vertical(c)
    r = top if end == "top" else bot
    left, _ = g.horizontal(r)
    goes_right = left == c
    if end == "top":
        return "NW" if goes_right else "NE"
    return "SW" if goes_right else "SE"


def corner_census(g: GridDiagram) -> CornerCensus:
    counts = dict.fromkeys(("NW", "NE", "SW", "SE"), 0)
    per = {k: dict(counts) for k in range(1, len(g.components) + 1)}
    tags = {}
    for c in range(1, g.n + 1):
        t, b = corner_tag(g, c, "top"), corner_tag(g, c, "bottom")
        tags[c] = (t, b)
        k = g.component_of_column(c)
        for tag in (t, b):
            counts[tag] += 1
            per[k][tag] += 1
    return CornerCensus(counts, tags, per)


@dataclass(frozen=True)
class LegendrianInvariants:
    writhe: int
    nw_corners: int
    tb: int
    framing: int


def legendrian_invariants(g: GridDiagram, component: int = 1) -> LegendrianInvariants:
    if not 1 <= component <= len(g.components):
        raise GridError(f"no component {component}")
    w = writhe(g, component)
    nw = corner_census(g).per_component[component]["NW"]
    tb = w - nw
    fr = g.framing_override(component)
    return LegendrianInvariants(w, nw, tb, tb - 1 if fr is None else fr)


# -- moves -------------------------------------------------------------


def _from_cells(n: int, cells: Iterable[tuple[int, int, str]], hole=None, src=None, row_map=None) -> GridDiagram:
    xs = [0] * n
    os = [0] * n
    for r, c, kind in cells:
        (xs if kind == "X" else os)[r - 1] = c
    g = GridDiagram(n, tuple(xs), tuple(os), hole)
    if src is None or not src.framings:
        return g
    # component numbering follows the top row, which a move may change
    fr = []
    for k, v in src.framings:
        fr.append((g.component_of_row(row_map(src.components[k - 1][0])), v))
    return GridDiagram(n, g.xs, g.os, hole, tuple(sorted(fr)))


def _cells(g: GridDiagram) -> list[tuple[int, int, str]]:
    out = []
    for r in range(1, g.n + 1):
        out.append((r, g.xs[r - 1], "X"))
        out.append((r, g.os[r - 1], "O"))
    return out


def sw_stabilize_ne(g: GridDiagram, corner: int) -> GridDiagram:
    """Add a zigzag at the NE corner on top of column ``corner``.

    The strand that arrived from the left and turned down now runs one
    step further right, drops one row, and comes back before descending.
    Writhe is unchanged and one NW corner appears, so tb drops by one.
    """
    c = corner
    if not 1 <= c <= g.n or corner_tag(g, c, "top") != "NE":
        raise GridError(f"column {c} has no NE corner")
    r, _ = g.vertical(c)
    kind = "X" if g.xs[r - 1] == c else "O"
    other = "O" if kind == "X" else "X"
    shift_c = lambda x: x + 1 if x > c else x  # noqa: E731
    shift_r = lambda y: y + 1 if y > r else y  # noqa: E731
    cells = [(shift_r(rr), shift_c(cc), k) for rr, cc, k in _cells(g) if (rr, cc) != (r, c)]
    cells += [(r, c + 1, kind), (r + 1, c + 1, other), (r + 1, c, kind)]
    hole = None if g.hole is None else (shift_r(g.hole[0]), shift_c(g.hole[1]))
    return _from_cells(g.n + 1, cells, hole, g, shift_r)


def vertical_translate(g: GridDiagram, shift: int) -> GridDiagram:
    """Move row r to row r+shift (cyclically); the hole stays put."""
    n = g.n
    s = shift % n
    rmap = lambda y: ((y - 1 + s) % n) + 1  # noqa: E731
    cells = [(rmap(rr), cc, k) for rr, cc, k in _cells(g)]
    try:
        return _from_cells(n, cells, g.hole, g, rmap)
    except GridError as exc:
        raise GridError(f"translation by {shift} moves a strand across the hole ({exc})") from None


def horizontal_translate(g: GridDiagram, shift: int) -> GridDiagram:
    n = g.n
    s = shift % n
    cells = [(rr, ((cc - 1 + s) % n) + 1, k) for rr, cc, k in _cells(g)]
    try:
        return _from_cells(n, cells, g.hole, g, lambda y: y)
    except GridError as exc:
        raise GridError(f"translation by {shift} moves a strand across the hole ({exc})") from None


def rotate180(g: GridDiagram) -> GridDiagram:
    n = g.n
    cells = [(n + 1 - rr, n + 1 - cc, k) for rr, cc, k in _cells(g)]
    hole = None if g.hole is None else (n + 1 - g.hole[0], n + 1 - g.hole[1])
    return _from_cells(n, cells, hole, g, lambda y: n + 1 - y)

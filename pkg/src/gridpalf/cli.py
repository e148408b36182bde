"""gridpalf command line.

Exit status: 0 success, 1 a verification check failed, 2 bad input
(unreadable or malformed files, impossible requests).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import report as R
from .construct import STRATEGIES, ConstructionError, construct_palf
from .grid import GridError, parse_grid
from .monodromy import MonodromyError, parse_script, run_script, total_monodromy
from .openbook import OpenBookError, compare, parse_fixture
from .render import render_svg
from .verify import (VerificationReport, check_rtl, check_torus_family, check_translation_principle,
                     check_twist_family, verify_palf)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _load_grid(path: str):
    text = _read(path)
    if path.endswith(".json"):
        # a report written by 'construct'
        try:
            doc = json.loads(text)
            g = doc["grid"]
            lines = [f"grid {g['n']}", "X " + " ".join(map(str, g["X"])), "O " + " ".join(map(str, g["O"]))]
            if g.get("hole"):
                lines.append(f"hole {g['hole'][0]} {g['hole'][1]}")
            for k, v in sorted(g.get("framings", {}).items()):
                lines.append(f"framing {k} {v}")
            text = "\n".join(lines)
            opts = doc.get("palf", {})
            return parse_grid(text), opts.get("strategy"), opts.get("include_c0")
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{path}: not a construct report ({exc})") from None
    try:
        return parse_grid(text), None, None
    except GridError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(doc: dict, out: str | None) -> None:
    text = R.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _build(g, strategy: str, include_c0: bool):
    try:
        return construct_palf(g, strategy, include_c0)
    except ConstructionError as exc:
        col = f" (blocking column {exc.column})" if exc.column is not None else ""
        raise InputError(f"construction failed: {exc}{col}") from None


def cmd_invariants(a) -> int:
    g, _, _ = _load_grid(a.path)
    _emit(R.document(grid=R.grid_echo(g), invariants=R.invariants_section(g)), a.out)
    return EXIT_OK


def cmd_construct(a) -> int:
    g, _, _ = _load_grid(a.path)
    p = _build(g, a.strategy, not a.no_c0)
    sec = R.palf_section(p)
    sec["include_c0"] = p.include_c0
    _emit(R.document(grid=R.grid_echo(g), invariants=R.invariants_section(g), palf=sec), a.out)
    if a.svg:
        Path(a.svg).write_text(render_svg(p))
    return EXIT_OK


def _parse_families(text: str) -> dict[str, range]:
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        m = re.fullmatch(r"([sn])=(\d+)(?:\.\.(\d+))?", part)
        if not m:
            raise InputError(f"bad family range {part!r}; use s=1..8,n=1..8")
        lo = int(m.group(2))
        hi = int(m.group(3) or lo)
        if lo < 1 or hi < lo:
            raise InputError(f"empty family range {part!r}")
        out[m.group(1)] = range(lo, hi + 1)
    return out


def cmd_verify(a) -> int:
    if not a.path and not a.families:
        raise InputError("give a grid file, --families, or both")
    rep = VerificationReport()
    doc = {}
    if a.path:
        g, _, _ = _load_grid(a.path)
        doc["grid"] = R.grid_echo(g)
        for c0 in (True, False):
            p = _build(g, a.strategy, c0)
            rep.extend(verify_palf(p), "P." if c0 else "SF.")
        if a.strategy == "flex" and g.hole is None:
            # both statements concern the disk base
            rep.extend(check_translation_principle(g), "translation.")
            rep.extend(check_rtl(g), "rtl.")
    if a.families:
        fam = _parse_families(a.families)
        if "s" in fam:
            rep.extend(check_twist_family(fam["s"]))
        if "n" in fam:
            rep.extend(check_torus_family(fam["n"]))
    doc["verification"] = rep.to_dict()
    _emit(R.document(**doc), a.out)
    if not rep.ok:
        print("failed checks: " + ", ".join(rep.failures), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_hurwitz(a) -> int:
    g, strat, c0 = _load_grid(a.palf)
    strategy = a.strategy or strat or "flex"
    include_c0 = a.with_c0 if c0 is None else c0
    p = _build(g, strategy, include_c0)
    try:
        moves = parse_script(_read(a.script))
        final, hist = run_script(p.factorization, moves)
    except MonodromyError as exc:
        raise InputError(str(exc)) from None
    ok = all(x[2] for x in hist)
    doc = R.document(
        grid=R.grid_echo(g),
        hurwitz={
            "initial": list(p.factorization.names),
            "history": [{"move": m, "order": list(n), "invariant": inv} for m, n, inv in hist],
            "final": [{"name": c.name, "homology": list(c.homology), "homology_only": c.homology_only}
                      for c in final.curves],
            "total_monodromy": total_monodromy(final).tolist(),
            "invariant": ok,
        },
    )
    _emit(doc, a.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(a) -> int:
    g, _, _ = _load_grid(a.path)
    p = _build(g, a.strategy, not a.no_c0)
    svg = render_svg(p)
    if a.out:
        Path(a.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_openbook(a) -> int:
    g, _, _ = _load_grid(a.path)
    p = _build(g, "flex", False)
    try:
        fx = parse_fixture(_read(a.fixture))
        res = compare(p, fx, max_len=a.max_len)
    except OpenBookError as exc:
        raise InputError(str(exc)) from None
    _emit(R.document(grid=R.grid_echo(g), openbook=res), a.out)
    return EXIT_OK if res.get("found") else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gridpalf", description="PALFs from grid diagrams.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("invariants", help="writhe, corners, tb of a grid")
    sp.add_argument("path")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("construct", help="build the fiber and factorization")
    sp.add_argument("path")
    sp.add_argument("--strategy", choices=STRATEGIES, default="flex")
    sp.add_argument("--no-c0", action="store_true", help="omit the C_0 cycles (the PALF SF)")
    sp.add_argument("--out")
    sp.add_argument("--svg")
    sp.set_defaults(fn=cmd_construct)

    sp = sub.add_parser("verify", help="run the algebraic checks")
    sp.add_argument("path", nargs="?")
    sp.add_argument("--strategy", choices=STRATEGIES, default="flex")
    sp.add_argument("--families", help="e.g. s=1..8,n=1..8")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("hurwitz", help="apply a move script to a factorization")
    sp.add_argument("palf", help="grid file or construct report")
    sp.add_argument("script")
    sp.add_argument("--strategy", choices=STRATEGIES)
    sp.add_argument("--with-c0", action="store_true", help="start from P instead of SF")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_hurwitz)

    sp = sub.add_parser("render", help="SVG of the constructed fiber")
    sp.add_argument("path")
    sp.add_argument("--strategy", choices=STRATEGIES, default="flex")
    sp.add_argument("--no-c0", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("openbook", help="compare SF with an open book fixture")
    sp.add_argument("path")
    sp.add_argument("fixture")
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_openbook)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return a.fn(a)
    except InputError as exc:
        print(f"gridpalf: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

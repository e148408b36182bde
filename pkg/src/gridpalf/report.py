"""JSON documents for the command line.  Keys are sorted and nothing
depends on time or hashing, so equal inputs give equal bytes."""

from __future__ import annotations

import json

from . import __version__
from .construct import PALF
from .fiber import canonical_word, surface_framing
from .grid import GridDiagram, corner_census, legendrian_invariants, linking_numbers, writhe

SCHEMA_VERSION = 1


def grid_echo(g: GridDiagram) -> dict:
    return {"n": g.n, "X": list(g.xs), "O": list(g.os),
            "hole": list(g.hole) if g.hole else None,
            "framings": {str(k): v for k, v in g.framings}}


def invariants_section(g: GridDiagram) -> dict:
    cen = corner_census(g)
    comps = []
    for k in range(1, len(g.components) + 1):
        li = legendrian_invariants(g, k)
        comps.append({"component": k, "rows": list(g.components[k - 1]), "writhe": li.writhe,
                      "nw_corners": li.nw_corners, "tb": li.tb, "framing": li.framing})
    return {
        "writhe": writhe(g),
        "corners": dict(cen.counts),
        "components": comps,
        "linking": {f"{a}-{b}": v for (a, b), v in linking_numbers(g).items()},
    }


def palf_section(p: PALF) -> dict:
    f = p.fiber
    return {
        "strategy": p.strategy,
        "base": p.base,
        "lifts": list(p.lifts),
        "lift_log": list(p.log),
        "boundary_word": {
            "raw": list(f.word),
            "ends": list(f.ends),
            "canonical": list(canonical_word(f.word)),
        },
        "fiber": {"chi": f.chi, "b": f.b, "g": f.g, "handles": f.k_total},
        "factorization": [{"name": c.name, "homology": list(c.homology)} for c in p.factorization.curves],
        "framings": [{"curve": c.name, "surface": surface_framing(f, c), "framing": c.framing}
                     for c in p.c0_curves + p.cycles],
        "feet": [{"column": o.column, "end": o.end, "kind": o.kind, "under": list(o.passes)}
                 for o in p.options],
    }


def document(**sections) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "tool": {"name": "gridpalf", "version": __version__}}
    doc.update({k: v for k, v in sections.items() if v is not None})
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"

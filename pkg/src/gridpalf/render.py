"""SVG pictures of a finished scene: the 0-handle region, the remaining
guide arcs, the handles with their feet, and the vanishing cycles."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from . import scene as S
from .construct import PALF

SCALE = 5
PALETTE = {"region": "#d9d9d9", "guide": "#555555", "handle": "#7fa7d9", "cycle": "#c0392b",
           "c0": "#1f5fbf", "hole": "#ffffff"}


def _pt(x, y) -> str:
    return f"{x * SCALE},{y * SCALE}"


def render_svg(p: PALF) -> str:
    s = p.scene
    g = s.grid
    W = s.W
    m = 3 * S.U
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=str((W + 2 * m) * SCALE), height=str((W + 2 * m) * SCALE),
                     viewBox=f"{-m * SCALE} {-m * SCALE} {(W + 2 * m) * SCALE} {(W + 2 * m) * SCALE}")
    ET.SubElement(svg, "title").text = f"{p.strategy} construction, n={g.n}"

    layer = ET.SubElement(svg, "g", id="region")
    ET.SubElement(layer, "polygon", points=" ".join(_pt(*q) for q in S.region_polygon(s)),
                  fill=PALETTE["region"], stroke="black")
    if g.hole is not None:
        x0, y0, x1, y1 = S.hole_rect(g.hole)
        ET.SubElement(layer, "rect", x=str(x0 * SCALE), y=str(y0 * SCALE), width=str((x1 - x0) * SCALE),
                      height=str((y1 - y0) * SCALE), fill=PALETTE["hole"], stroke="black")

    layer = ET.SubElement(svg, "g", id="guide-arcs")
    for kind, idx, a, b in s.guide_arcs:
        if kind == "H":
            pts = [(S.U * a, S.U * idx), (S.U * b, S.U * idx)]
        else:
            pts = [(S.U * idx, S.U * a), (S.U * idx, S.U * b)]
        ET.SubElement(layer, "polyline", points=" ".join(_pt(*q) for q in pts),
                      stroke=PALETTE["guide"], fill="none", **{"stroke-dasharray": "4,3"})

    layer = ET.SubElement(svg, "g", id="cycles")
    for k, rows in enumerate(g.components, start=1):
        pts = []
        for r in rows:
            pts.append((S.U * g.xs[r - 1], S.U * r))
            pts.append((S.U * g.os[r - 1], S.U * r))
        ET.SubElement(layer, "polygon", points=" ".join(_pt(*q) for q in pts), fill="none",
                      stroke=PALETTE["c0"], **{"stroke-width": "2", "class": f"C0 component-{k}"})

    layer = ET.SubElement(svg, "g", id="handles")
    for h in s.handles:
        a, b = h.top_foot.tip, h.bottom_foot.tip
        x = S.U * h.column
        pts = [a, (x, a[1]), (x, b[1]), b]
        ET.SubElement(layer, "polyline", points=" ".join(_pt(*q) for q in pts), fill="none",
                      stroke=PALETTE["handle"], **{"stroke-width": "6", "stroke-opacity": "0.6"})
        ET.SubElement(layer, "polyline", points=" ".join(_pt(*q) for q in pts), fill="none",
                      stroke=PALETTE["cycle"], **{"stroke-width": "1", "class": f"C{h.column}"})

    layer = ET.SubElement(svg, "g", id="feet")
    for nt in s.notches:
        x, y = nt.tip
        t = ET.SubElement(layer, "text", x=str(x * SCALE + 4), y=str(y * SCALE - 4),
                          **{"font-size": "12", "font-family": "sans-serif"})
        t.text = str(abs(nt.foot))
    return ET.tostring(svg, encoding="unicode") + "\n"

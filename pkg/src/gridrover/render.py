"""Static renderings of a tour over its polygon: ASCII and SVG."""

from __future__ import annotations

from collections import Counter
from xml.etree import ElementTree as ET

from .grid import GridPolygon, bounding_box
from .simulator import ExplorationTrace

SVG_NS = "http://www.w3.org/2000/svg"


def render_ascii(P: GridPolygon, trace: ExplorationTrace | None = None) -> str:
    """Board with a one-cell wall; free cells show how often the tour entered them.

    ``S`` marks the start, digits count visits (``+`` for ten or more) and
    ``.`` is a free cell the tour never reached.
    """
    visits = Counter(trace.positions[1:]) if trace is not None else Counter()
    x0, y0, x1, y1 = bounding_box(P.free_cells)
    rows = []
    for y in range(y0 - 1, y1 + 2):
        row = []
        for x in range(x0 - 1, x1 + 2):
            c = (x, y)
            if c not in P.free_cells:
                row.append("#")
            elif c == P.start:
                row.append("S")
            elif visits[c] == 0:
                row.append(".")
            else:
                row.append(str(visits[c]) if visits[c] < 10 else "+")
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def render_svg(P: GridPolygon, trace: ExplorationTrace, cell: int = 20) -> str:
    """One ``rect`` per free cell and a single polyline through the cell centres."""
    ET.register_namespace("", SVG_NS)
    x0, y0, x1, y1 = bounding_box(P.free_cells)
    width, height = (x1 - x0 + 1) * cell, (y1 - y0 + 1) * cell
    root = ET.Element(
        f"{{{SVG_NS}}}svg",
        {"width": str(width), "height": str(height), "viewBox": f"0 0 {width} {height}"},
    )
    cells = ET.SubElement(root, f"{{{SVG_NS}}}g", {"class": "cells", "fill": "#eef", "stroke": "#99a"})
    for x, y in sorted(P.free_cells, key=lambda c: (c[1], c[0])):
        attrs = {"x": str((x - x0) * cell), "y": str((y - y0) * cell), "width": str(cell), "height": str(cell)}
        if (x, y) == P.start:
            attrs["fill"] = "#cfc"
        ET.SubElement(cells, f"{{{SVG_NS}}}rect", attrs)
    half = cell / 2
    points = " ".join(f"{(x - x0) * cell + half:g},{(y - y0) * cell + half:g}" for x, y in trace.positions)
    ET.SubElement(
        root,
        f"{{{SVG_NS}}}polyline",
        {"class": "tour", "points": points, "fill": "none", "stroke": "#c22", "stroke-width": str(max(1, cell // 8))},
    )
    return ET.tostring(root, encoding="unicode") + "\n"


__all__ = ["render_ascii", "render_svg"]

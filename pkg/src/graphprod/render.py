"""SVG drawings of disk diagrams and DOT exports of graphs.

Output is a pure function of its input: no timestamps, fixed float
formatting, and palette colors assigned by vertex declaration order.
"""
from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

from .contact import Hyperplane
from .diagrams import DiskDiagram
from .graph import DefiningGraph
from .words import PrismWord

PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")


def _color(graph: DefiningGraph, vertex) -> str:
    return PALETTE[graph.index[vertex] % len(PALETTE)]


def diagram_svg(d: DiskDiagram, size: int = 400, timestamp: str | None = None) -> str:
    """Boundary letters on a circle; each block is a ``<g class="block">`` of chords to its centroid."""
    n = len(d)
    c = size / 2
    r = size / 2 - 40
    pts = [
        (c + r * math.cos(2 * math.pi * k / max(n, 1) - math.pi / 2),
         c + r * math.sin(2 * math.pi * k / max(n, 1) - math.pi / 2))
        for k in range(n)
    ]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">'
    ]
    if timestamp is not None:
        out.append(f"<metadata>{escape(timestamp)}</metadata>")
    out.append(f'<circle cx="{c:.2f}" cy="{c:.2f}" r="{r:.2f}" fill="none" stroke="#999999"/>')
    for b in d.blocks:
        color = _color(d.graph, b.vertex)
        mx = sum(pts[p][0] for p in b.roots) / len(b.roots)
        my = sum(pts[p][1] for p in b.roots) / len(b.roots)
        out.append(f'<g class="block" data-vertex="{escape(str(b.vertex))}" stroke="{color}" fill="none">')
        for p in b.roots:
            x, y = pts[p]
            out.append(f'<line x1="{x:.2f}" y1="{y:.2f}" x2="{mx:.2f}" y2="{my:.2f}"/>')
        out.append("</g>")
    for k, letter in enumerate(d.boundary):
        x, y = pts[k]
        lx = c + (x - c) * (r + 18) / r
        ly = c + (y - c) * (r + 18) / r
        label = escape(PrismWord._raw(d.graph, (letter,)).format())
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{_color(d.graph, letter.vertex)}"/>')
        out.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="11" text-anchor="middle" '
            f'dominant-baseline="middle">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def defining_graph_dot(graph: DefiningGraph) -> str:
    lines = ["graph defining {"]
    for v in graph.vertices:
        lines.append(f"  {_dot_id(v)} [label={_dot_id(f'{v} ({graph.groups[v].tag})')}];")
    for u, v in sorted(tuple(graph.sorted(e)) for e in graph.edges):
        lines.append(f"  {_dot_id(u)} -- {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def contact_graph_dot(nodes: Sequence[Hyperplane], edges: Sequence[tuple[int, int]]) -> str:
    """Hyperplane adjacency: one node per hyperplane, an edge when carriers meet."""
    lines = ["graph contact {"]
    for i, h in enumerate(nodes):
        lines.append(f"  n{i} [label={_dot_id(str(h))}];")
    for i, j in sorted(edges):
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

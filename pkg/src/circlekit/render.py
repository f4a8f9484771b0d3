"""Matplotlib renderings of chord diagrams and plane multigraphs.

Output is deterministic byte-for-byte for SVG: the hash salt and the file
date metadata are pinned so repeated runs of the same input produce the
same file.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "circlekit"

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .chords import ChordDiagram
from .planar import PlaneMultigraph

__all__ = ["render_chord_diagram", "render_plane_multigraph", "save_figure"]

_HIGHLIGHT = "#d62728"
_BASE = "#1f77b4"


def save_figure(fig, path: str) -> None:
    """Write the figure; SVG gets pinned metadata so bytes are reproducible."""
    if path.lower().endswith(".svg"):
        fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path)
    plt.close(fig)


def render_chord_diagram(
    d: ChordDiagram,
    highlight: Iterable = (),
    title: Optional[str] = None,
):
    """Chords drawn as straight segments between their two word positions on
    the unit circle; letters in ``highlight`` are emphasised."""
    marked = set(highlight)
    word = d.word
    m = len(word)
    fig, ax = plt.subplots(figsize=(5, 5))
    circle = plt.Circle((0, 0), 1.0, fill=False, color="0.6", lw=1.0)
    ax.add_patch(circle)

    def point(k: int) -> Tuple[float, float]:
        ang = math.pi / 2 - 2 * math.pi * k / max(m, 1)
        return math.cos(ang), math.sin(ang)

    position: Dict = {}
    for k, letter in enumerate(word):
        position.setdefault(letter, []).append(k)
        x, y = point(k)
        ax.plot([x], [y], marker="o", ms=3, color="0.3")
        ax.annotate(str(letter), (1.12 * x, 1.12 * y), ha="center", va="center", fontsize=9)
    for letter, (i, j) in sorted(position.items(), key=lambda kv: repr(kv[0])):
        x1, y1 = point(i)
        x2, y2 = point(j)
        color = _HIGHLIGHT if letter in marked else _BASE
        width = 2.0 if letter in marked else 1.4
        ax.plot([x1, x2], [y1, y2], color=color, lw=width)
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return fig


def _vertex_layout(p: PlaneMultigraph) -> Dict:
    vs = sorted(p.base.vertices, key=repr)
    n = len(vs)
    out = {}
    for k, v in enumerate(vs):
        ang = math.pi / 2 - 2 * math.pi * k / max(n, 1)
        out[v] = (math.cos(ang), math.sin(ang))
    return out


def render_plane_multigraph(p: PlaneMultigraph, title: Optional[str] = None):
    """Documentation-grade drawing: vertices on a circle, parallel edges as
    increasingly bowed arcs, loops as petals.  The picture shows the graph,
    not the chosen embedding."""
    pos = _vertex_layout(p)
    fig, ax = plt.subplots(figsize=(5, 5))
    by_pair: Dict = {}
    for e in p.base.edge_ids():
        u, v = p.base.ends(e)
        key = tuple(sorted((u, v), key=repr))
        by_pair.setdefault(key, []).append(e)
    for (u, v), group in sorted(by_pair.items(), key=repr):
        group.sort(key=repr)
        x1, y1 = pos[u]
        x2, y2 = pos[v]
        if u == v:
            for i, e in enumerate(group):
                r = 0.12 + 0.08 * i
                cx = x1 * (1 + r)
                cy = y1 * (1 + r)
                loop = plt.Circle((cx, cy), r, fill=False, color=_BASE, lw=1.3)
                ax.add_patch(loop)
            continue
        k = len(group)
        for i, e in enumerate(group):
            bend = 0.0 if k == 1 else -0.45 + 0.9 * i / (k - 1)
            arc = FancyArrowPatch(
                (x1, y1),
                (x2, y2),
                connectionstyle=f"arc3,rad={bend:.3f}",
                arrowstyle="-",
                color=_BASE,
                lw=1.3,
            )
            ax.add_patch(arc)
    for v, (x, y) in sorted(pos.items(), key=lambda kv: repr(kv[0])):
        ax.plot([x], [y], marker="o", ms=6, color="0.15")
        ax.annotate(str(v), (1.14 * x, 1.14 * y), ha="center", va="center", fontsize=9)
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return fig

"""Deterministic SVG rendering of rate regions."""
from __future__ import annotations

import io
import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polytope import Region2  # noqa: E402

PX_PER_UNIT = 80
MARGIN_PX = 60
DPI = 72  # the SVG backend works in points

plt.rcParams.update({
    "svg.hashsalt": "nashregion",
    "svg.fonttype": "path",
    "font.size": 10,
})


def _extent(regions: Sequence[Region2], points) -> int:
    top = 1
    for r in regions:
        for x, y in r.vertices:
            top = max(top, math.ceil(x), math.ceil(y))
    for x, y in points:
        top = max(top, math.ceil(x), math.ceil(y))
    return top + 1


def _draw(ax, capacity: Region2, nash: Region2, points, extent: int, title: str):
    ax.set_xlim(0, extent)
    ax.set_ylim(0, extent)
    ax.set_xticks(range(extent + 1))
    ax.set_yticks(range(extent + 1))
    ax.grid(True, color="#dddddd", linewidth=0.6)
    ax.set_aspect("equal")
    ax.set_xlabel("R1 [bits/use]")
    ax.set_ylabel("R2 [bits/use]")
    if title:
        ax.set_title(title)

    def outline(r: Region2, **kw):
        if r.empty:
            return
        xs = [float(x) for x, _ in r.vertices]
        ys = [float(y) for _, y in r.vertices]
        if len(xs) > 2:
            xs.append(xs[0])
            ys.append(ys[0])
        ax.plot(xs, ys, marker="o" if len(r.vertices) == 1 else None, **kw)
        return xs, ys

    outline(capacity, color="black", linewidth=1.5, label="C")
    drawn = outline(nash, color="tab:red", linewidth=1.5, label="N_eta")
    if drawn and len(nash.vertices) > 2:
        ax.fill(drawn[0], drawn[1], color="tab:red", alpha=0.3, linewidth=0)
    for x, y in points:
        ax.plot([float(x)], [float(y)], marker="x", color="tab:blue", markersize=7)
    ax.legend(loc="upper right", frameon=False)


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def region_svg(capacity: Region2, nash: Region2, points=(), title: str = "") -> str:
    """C outline and N_eta filled, integer grid, 80 px per rate unit."""
    extent = _extent([capacity, nash], points)
    side = extent * PX_PER_UNIT
    w = h = side + 2 * MARGIN_PX
    fig = plt.figure(figsize=(w / DPI, h / DPI), dpi=DPI)
    ax = fig.add_axes([MARGIN_PX / w, MARGIN_PX / h, side / w, side / h])
    _draw(ax, capacity, nash, points, extent, title)
    return _svg(fig)


def panels_svg(panels: Sequence[tuple[str, Region2, Region2, Sequence]], columns: int = 3) -> str:
    """Several (title, C, N_eta, points) panels on one sheet, shared scale."""
    extent = max(_extent([c, n], pts) for _, c, n, pts in panels)
    side = extent * PX_PER_UNIT
    cell = side + 2 * MARGIN_PX
    rows = -(-len(panels) // columns)
    W, H = columns * cell, rows * cell
    fig = plt.figure(figsize=(W / DPI, H / DPI), dpi=DPI)
    for k, (title, c, n, pts) in enumerate(panels):
        r, col = divmod(k, columns)
        left = (col * cell + MARGIN_PX) / W
        bottom = ((rows - 1 - r) * cell + MARGIN_PX) / H
        ax = fig.add_axes([left, bottom, side / W, side / H])
        _draw(ax, c, n, pts, extent, title)
    return _svg(fig)

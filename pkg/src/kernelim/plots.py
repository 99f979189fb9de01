"""Minimal self-contained SVG scatter plots (no plotting dependency)."""

from __future__ import annotations

import numpy as np

from .graphs import Graph

# Five-stop dark-blue -> yellow ramp, interpolated linearly.
_RAMP = (
    (68, 1, 84),
    (59, 82, 139),
    (33, 145, 140),
    (94, 201, 98),
    (253, 231, 37),
)


def _color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_RAMP) - 1)
    i = min(int(pos), len(_RAMP) - 2)
    frac = pos - i
    r, g, b = (
        round(a + (b2 - a) * frac) for a, b2 in zip(_RAMP[i], _RAMP[i + 1])
    )
    return f"rgb({r},{g},{b})"


def selection_svg(
    graph: Graph,
    values: np.ndarray,
    chosen=(),
    size: int = 640,
    margin: int = 30,
    radius: float = 5.0,
) -> str:
    """Scatter of node positions colored by `values`, chosen nodes circled."""
    if graph.positions is None:
        raise ValueError("graph has no node positions; nothing to plot")
    values = np.asarray(values, dtype=float)
    pos = graph.positions
    lo = pos.min(axis=0)
    span = np.maximum(pos.max(axis=0) - lo, 1e-30)
    scale = (size - 2 * margin) / span.max()
    vmax = max(float(values.max()), 1e-30)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    chosen = set(int(v) for v in chosen)
    for i in range(graph.n):
        x = margin + (pos[i, 0] - lo[0]) * scale
        y = size - margin - (pos[i, 1] - lo[1]) * scale  # flip: SVG y grows downward
        parts.append(
            f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius}" '
            f'fill="{_color(values[i] / vmax)}"/>'
        )
        if i in chosen:
            parts.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius + 2.5:.1f}" '
                f'fill="none" stroke="black" stroke-width="1.5"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_selection_svg(path, graph: Graph, values, chosen=()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(selection_svg(graph, values, chosen))

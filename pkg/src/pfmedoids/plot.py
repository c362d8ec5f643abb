"""Static SVG rendering of a clustered front.

Written by hand rather than through a plotting library so that identical
inputs give byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .pareto import ParetoInstance

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
WIDTH, HEIGHT, MARGIN = 640, 480, 48


def render_svg(inst: ParetoInstance, labels: Sequence[int], medoids: Sequence[int], title: str = "") -> str:
    pts = inst.points
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    sx = MARGIN + (pts[:, 0] - lo[0]) / span[0] * (WIDTH - 2 * MARGIN)
    sy = HEIGHT - MARGIN - (pts[:, 1] - lo[1]) / span[1] * (HEIGHT - 2 * MARGIN)
    r = 4.0 if len(pts) <= 200 else 2.0

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="#444"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="#444"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" font-size="12">objective 1</text>',
        f'<text x="14" y="{HEIGHT / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {HEIGHT / 2:.1f})">objective 2</text>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="14">{title}</text>')
    out.append('<g class="points">')
    for i in range(len(pts)):
        color = PALETTE[int(labels[i]) % len(PALETTE)]
        out.append(f'<circle cx="{sx[i]:.2f}" cy="{sy[i]:.2f}" r="{r}" fill="{color}"/>')
    out.append("</g>")
    out.append('<g class="medoids">')
    for label, m in enumerate(medoids):
        color = PALETTE[label % len(PALETTE)]
        out.append(
            f'<circle cx="{sx[m]:.2f}" cy="{sy[m]:.2f}" r="{2.5 * r}" fill="{color}" '
            f'stroke="#000000" stroke-width="2"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(inst: ParetoInstance, clustering, path: Union[str, Path], title: str = "") -> Path:
    """Write an SVG scatter of ``inst`` coloured by cluster, medoids ringed in black.

    ``clustering`` is an :class:`~pfmedoids.solver.IntervalClustering` or a
    :class:`~pfmedoids.oracles.PartitionCandidate`.
    """
    if hasattr(clustering, "assignment"):
        labels = list(clustering.assignment)
    else:
        labels = list(clustering.labels(inst.n))
    path = Path(path)
    path.write_text(render_svg(inst, labels, clustering.medoids, title), encoding="utf-8")
    return path

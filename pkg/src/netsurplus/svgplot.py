"""Tiny dependency-free SVG scatter plot, enough for C vs lambda."""

from __future__ import annotations

from typing import Mapping, Sequence

_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def scatter_svg(
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom
    xs = list(map(float, x))
    ys = [float(v) for vals in series.values() for v in vals]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys + [0.0]), max(ys + [1.0])
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        tx = x0 + (x1 - x0) * i / 5
        ty = y0 + (y1 - y0) * i / 5
        out.append(f'<text x="{px(tx):.1f}" y="{top + ph + 18}" text-anchor="middle">{tx:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{py(ty) + 4:.1f}" text-anchor="end">{ty:.4g}</text>')
    for k, (name, vals) in enumerate(series.items()):
        colour = _COLOURS[k % len(_COLOURS)]
        for xv, yv in zip(xs, vals):
            out.append(f'<circle cx="{px(xv):.2f}" cy="{py(float(yv)):.2f}" r="2.5" fill="{colour}" fill-opacity="0.7"/>')
        out.append(f'<text x="{left + 10}" y="{top + 16 + 16 * k}" fill="{colour}">{name}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2})">{ylabel}</text>'
    )
    if title:
        out.append(f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

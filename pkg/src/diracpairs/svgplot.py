"""Minimal deterministic SVG line plots.

Hand-rolled on purpose: the output must be byte-identical for identical
input (regression tests diff the files), which rules out plotting libraries
that embed timestamps, random ids, or version strings.  Every coordinate is
emitted through a fixed format string.

Log-scale handling: values <= 0 cannot be drawn on a log ordinate, so they
are clamped to the plot floor (one decade below the smallest positive value)
and marked with an x-shaped glyph plus a footnote, rather than silently
dropped.
"""

from __future__ import annotations

import math
from typing import Sequence

_WIDTH = 720.0
_HEIGHT = 480.0
_MARGIN_L = 80.0
_MARGIN_R = 18.0
_MARGIN_T = 30.0
_MARGIN_B = 56.0


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


def polyline_svg(x: Sequence[float], y: Sequence[float], *,
                 xlabel: str, ylabel: str, title: str = "",
                 log_y: bool = False) -> str:
    """Standalone SVG document with exactly one polyline for the data."""
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if len(xs) == 0 or len(xs) != len(ys):
        raise ValueError("need equal-length nonempty x and y")

    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    clamped = []
    if log_y:
        positive = [v for v in ys if v > 0.0]
        if not positive:
            raise ValueError("log scale needs at least one positive value")
        floor = min(positive) / 10.0
        y_plot = []
        for i, v in enumerate(ys):
            if v <= 0.0:
                clamped.append(i)
                y_plot.append(math.log10(floor))
            else:
                y_plot.append(math.log10(v))
        y_lo, y_hi = math.log10(floor), max(y_plot)
    else:
        y_plot = ys
        y_lo, y_hi = min(ys), max(ys)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    span_x = _WIDTH - _MARGIN_L - _MARGIN_R
    span_y = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * span_x

    def py(v: float) -> float:
        return _HEIGHT - _MARGIN_B - (v - y_lo) / (y_hi - y_lo) * span_y

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
        f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    # frame
    x0, x1 = _MARGIN_L, _WIDTH - _MARGIN_R
    y0, y1 = _HEIGHT - _MARGIN_B, _MARGIN_T
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                 f'y2="{_fmt(y0)}" stroke="black"/>')
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" '
                 f'y2="{_fmt(y1)}" stroke="black"/>')

    for i in range(5):
        tx = x_lo + i * (x_hi - x_lo) / 4.0
        gx = px(tx)
        parts.append(f'<line x1="{_fmt(gx)}" y1="{_fmt(y0)}" x2="{_fmt(gx)}" '
                     f'y2="{_fmt(y0 + 5)}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(gx)}" y="{_fmt(y0 + 20)}" '
                     f'font-size="12" text-anchor="middle">'
                     f'{_tick_label(tx)}</text>')
        tv = y_lo + i * (y_hi - y_lo) / 4.0
        gy = py(tv)
        label = 10.0 ** tv if log_y else tv
        parts.append(f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(gy)}" '
                     f'x2="{_fmt(x0)}" y2="{_fmt(gy)}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(x0 - 8)}" y="{_fmt(gy + 4)}" '
                     f'font-size="12" text-anchor="end">'
                     f'{_tick_label(label)}</text>')

    points = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}"
                      for a, b in zip(xs, y_plot))
    parts.append(f'<polyline points="{points}" fill="none" stroke="#1f5fa8" '
                 'stroke-width="1.5"/>')

    for i in clamped:
        cx, cy = px(xs[i]), py(y_plot[i])
        parts.append(f'<path d="M {_fmt(cx - 4)} {_fmt(cy - 4)} '
                     f'L {_fmt(cx + 4)} {_fmt(cy + 4)} '
                     f'M {_fmt(cx - 4)} {_fmt(cy + 4)} '
                     f'L {_fmt(cx + 4)} {_fmt(cy - 4)}" stroke="#b03030" '
                     'stroke-width="1.5" fill="none"/>')
    if clamped:
        parts.append(f'<text x="{_fmt(x1)}" y="{_fmt(_HEIGHT - 6)}" '
                     'font-size="11" text-anchor="end" fill="#b03030">'
                     'non-positive values clamped to plot floor (x markers)'
                     '</text>')

    parts.append(f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(_HEIGHT - 16)}" '
                 f'font-size="13" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{_fmt((y0 + y1) / 2)}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{_fmt((y0 + y1) / 2)})">{ylabel}</text>')
    if title:
        parts.append(f'<text x="{_fmt((x0 + x1) / 2)}" y="20" font-size="14" '
                     f'text-anchor="middle">{title}</text>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"

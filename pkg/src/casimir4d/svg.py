"""Minimal SVG line plots, enough to eyeball the figure data without a plotting stack."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=30, bottom=50)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
DASHES = ("", "6,4", "2,3", "8,3,2,3")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    out, t = [], start
    while t <= hi + 1e-9 * step:
        out.append(round(t, 12))
        t += step
    return out


def line_plot(series, title="", xlabel="", ylabel="", logx=False, hline=None) -> str:
    """Render ``series`` (a list of ``(label, xs, ys)``) as an SVG document string."""
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("nothing to plot")
    tx = (lambda v: math.log10(v)) if logx else (lambda v: v)
    x0, x1 = min(map(tx, xs_all)), max(map(tx, xs_all))
    y0, y1 = min(ys_all), max(ys_all)
    if hline is not None:
        y0, y1 = min(y0, hline), max(y1, hline)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(v):
        return left + (tx(v) - x0) / (x1 - x0) * pw

    def py(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        X = left + (t - x0) / (x1 - x0) * pw
        label = f"1e{t:g}" if logx else f"{t:g}"
        out.append(f'<line x1="{_fmt(X)}" y1="{top + ph}" x2="{_fmt(X)}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(X)}" y="{top + ph + 18}" text-anchor="middle">{escape(label)}</text>')
    for t in _ticks(y0, y1):
        Y = py(t)
        out.append(f'<line x1="{left - 5}" y1="{_fmt(Y)}" x2="{left}" y2="{_fmt(Y)}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(Y + 4)}" text-anchor="end">{t:g}</text>')
    if hline is not None:
        Y = py(hline)
        out.append(
            f'<line x1="{left}" y1="{_fmt(Y)}" x2="{left + pw}" y2="{_fmt(Y)}" stroke="#999" stroke-dasharray="3,3"/>'
        )
    for i, (label, xs, ys) in enumerate(series):
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        dash = DASHES[i % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        color = COLORS[i % len(COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{pts}"/>')
        ly = top + 15 + 16 * i
        out.append(
            f'<line x1="{left + pw - 120}" y1="{ly}" x2="{left + pw - 95}" y2="{ly}" stroke="{color}"{dash_attr}/>'
        )
        out.append(f'<text x="{left + pw - 90}" y="{ly + 4}">{escape(label)}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{left + pw / 2}" y="18" text-anchor="middle">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

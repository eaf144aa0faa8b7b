"""Minimal SVG writers (stem, line, heat map, level diagram).

Output is plain text built from a handful of primitives so that identical
data always gives byte-identical files.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 720, 420
MARGIN = (70, 20, 30, 50)  # left, right, top, bottom
PALETTE = ("#1f4e79", "#b03a2e", "#1e8449", "#7d3c98")


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-2:
        return f"{v:.2g}"
    return f"{v:.4g}"


class _Canvas:
    def __init__(self, title: str, xlabel: str, ylabel: str, xr, yr, width=WIDTH, height=HEIGHT):
        self.w, self.h = width, height
        self.x0, self.x1 = xr
        self.y0, self.y1 = yr
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0
        left, right, top, bottom = MARGIN
        self.px0, self.px1 = left, width - right
        self.py0, self.py1 = height - bottom, top
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
        ]
        self._axes(xlabel, ylabel)

    def sx(self, x):
        return self.px0 + (x - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def sy(self, y):
        return self.py0 + (y - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)

    def _axes(self, xlabel, ylabel):
        p = self.parts
        p.append(
            f'<path d="M{self.px0} {self.py1}V{self.py0}H{self.px1}" fill="none" stroke="black"/>'
        )
        for v in np.linspace(self.x0, self.x1, 5):
            x = self.sx(v)
            p.append(f'<line x1="{_num(x)}" y1="{self.py0}" x2="{_num(x)}" y2="{self.py0 + 5}" stroke="black"/>')
            p.append(f'<text x="{_num(x)}" y="{self.py0 + 18}" text-anchor="middle">{_tick_label(v)}</text>')
        for v in np.linspace(self.y0, self.y1, 5):
            y = self.sy(v)
            p.append(f'<line x1="{self.px0 - 5}" y1="{_num(y)}" x2="{self.px0}" y2="{_num(y)}" stroke="black"/>')
            p.append(f'<text x="{self.px0 - 8}" y="{_num(y + 4)}" text-anchor="end">{_tick_label(v)}</text>')
        p.append(
            f'<text x="{(self.px0 + self.px1) / 2:.0f}" y="{self.h - 12}" text-anchor="middle">{escape(xlabel)}</text>'
        )
        p.append(
            f'<text x="14" y="{(self.py0 + self.py1) / 2:.0f}" text-anchor="middle" '
            f'transform="rotate(-90 14 {(self.py0 + self.py1) / 2:.0f})">{escape(ylabel)}</text>'
        )

    def text(self, x, y, s, anchor="start", color="black"):
        self.parts.append(
            f'<text x="{_num(x)}" y="{_num(y)}" text-anchor="{anchor}" fill="{color}">{escape(s)}</text>'
        )

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(self.parts + ["</svg>"]) + "\n")
        return path


def _range(v: np.ndarray, pad: float = 0.05) -> tuple[float, float]:
    lo, hi = float(np.min(v)), float(np.max(v))
    span = hi - lo or max(abs(hi), 1.0)
    return lo - pad * span, hi + pad * span


def stem_plot(path, r, weights, title: str, peak: tuple[int, float] | None = None, xlabel="r", ylabel="C_r"):
    """Vertical stems from 0 to C_r; dense data collapses to one min/max stroke per pixel column."""
    r = np.asarray(r, dtype=float)
    w = np.asarray(weights, dtype=float)
    yr = _range(np.append(w, 0.0))
    c = _Canvas(title, xlabel, ylabel, (float(r.min()), float(r.max())), yr)
    cols = int(c.px1 - c.px0)
    segs = []
    if r.size > 2 * cols:
        col = np.clip(((r - c.x0) / (c.x1 - c.x0) * cols).astype(int), 0, cols - 1)
        lo = np.full(cols, np.inf)
        hi = np.full(cols, -np.inf)
        np.minimum.at(lo, col, np.minimum(w, 0.0))
        np.maximum.at(hi, col, np.maximum(w, 0.0))
        for k in np.nonzero(np.isfinite(lo))[0]:
            if hi[k] == lo[k]:
                continue
            x = c.px0 + k + 0.5
            segs.append(f"M{_num(x)} {_num(c.sy(lo[k]))}V{_num(c.sy(hi[k]))}")
    else:
        y0 = c.sy(0.0)
        for ri, wi in zip(r, w):
            if wi != 0:
                segs.append(f"M{_num(c.sx(ri))} {_num(y0)}V{_num(c.sy(wi))}")
    c.parts.append(f'<path d="{"".join(segs)}" stroke="{PALETTE[0]}" stroke-width="1" fill="none"/>')
    c.parts.append(
        f'<line x1="{c.px0}" y1="{_num(c.sy(0))}" x2="{c.px1}" y2="{_num(c.sy(0))}" stroke="#888" stroke-width="0.5"/>'
    )
    if peak is not None:
        rp, wp = peak
        x, y = c.sx(rp), c.sy(wp)
        c.parts.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="4" fill="none" stroke="{PALETTE[1]}"/>')
        c.text(x, y - 8 if wp >= 0 else y + 16, f"r_peak = {rp}, C = {wp:.3g}", "middle", PALETTE[1])
    return c.save(path)


def line_plot(path, x, series: Sequence[tuple[str, Sequence[float]]], title: str, xlabel: str, ylabel: str, logx=False):
    x = np.asarray(x, dtype=float)
    xs = np.log10(x) if logx else x
    ys = [np.asarray(v, dtype=float) for _, v in series]
    c = _Canvas(title, ("log10 " + xlabel) if logx else xlabel, ylabel, (float(xs.min()), float(xs.max())),
                _range(np.concatenate(ys)))
    for k, ((label, _), y) in enumerate(zip(series, ys)):
        color = PALETTE[k % len(PALETTE)]
        d = "".join(("M" if i == 0 else "L") + f"{_num(c.sx(a))} {_num(c.sy(b))}" for i, (a, b) in enumerate(zip(xs, y)))
        c.parts.append(f'<path d="{d}" stroke="{color}" fill="none" stroke-width="1.5"/>')
        c.text(c.px1 - 4, c.py1 + 14 * (k + 1), label, "end", color)
    return c.save(path)


def _color(t: float) -> str:
    # dark blue -> yellow ramp
    t = min(max(t, 0.0), 1.0)
    r = int(20 + 235 * t)
    g = int(30 + 200 * t)
    b = int(110 - 80 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(path, xs, ys, panels: Sequence[tuple[str, np.ndarray]], title: str, xlabel: str, ylabel: str,
            mask: np.ndarray | None = None):
    """One log10-valued heat map per panel over a (len(ys), len(xs)) grid; ``mask`` outlines cells."""
    xs = np.log10(np.asarray(xs, dtype=float))
    ys = np.log10(np.asarray(ys, dtype=float))
    pw = 360
    width = pw * len(panels)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{HEIGHT}" '
        f'viewBox="0 0 {width} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    left, top, size = 60, 40, 280
    nx, ny = xs.size, ys.size
    cw, ch = size / nx, size / ny
    for p, (label, values) in enumerate(panels):
        ox = p * pw + left
        v = np.log10(np.abs(np.asarray(values, dtype=float)) + 1e-300)
        lo, hi = float(v.min()), float(v.max())
        span = hi - lo or 1.0
        for i in range(ny):
            for j in range(nx):
                x = ox + j * cw
                y = top + size - (i + 1) * ch
                extra = ' stroke="white" stroke-width="0.6"' if mask is not None and mask[i, j] else ""
                parts.append(
                    f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(cw)}" height="{_num(ch)}" '
                    f'fill="{_color((v[i, j] - lo) / span)}"{extra}/>'
                )
        parts.append(
            f'<text x="{ox + size / 2:.0f}" y="{top + size + 36}" text-anchor="middle">'
            f'{escape(label)}: log10 from {lo:.2f} to {hi:.2f}</text>'
        )
        parts.append(
            f'<text x="{ox + size / 2:.0f}" y="{top + size + 16}" text-anchor="middle">'
            f'log10 {escape(xlabel)} [{xs[0]:.2f}, {xs[-1]:.2f}]</text>'
        )
        parts.append(
            f'<text x="{ox - 8}" y="{top + size / 2:.0f}" text-anchor="middle" '
            f'transform="rotate(-90 {ox - 8} {top + size / 2:.0f})">log10 {escape(ylabel)} '
            f'[{ys[0]:.2f}, {ys[-1]:.2f}]</text>'
        )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts + ["</svg>"]) + "\n")
    return path


def level_plot(path, diagram, hbar_omega: float, title: str):
    """Horizontal bars for each dominant level (energy in units of hbar omega), transitions as arrows."""
    levels = diagram.levels
    e = np.array([lv.energy / hbar_omega for lv in levels])
    c = _Canvas(title, "", "energy / (hbar omega)", (0.0, 4.0), _range(e, 0.1))
    slot = {0: 1.0, 1: 3.0}
    for lv, y in zip(levels, e):
        x = slot.get(lv.n, 2.0)
        color = PALETTE[lv.n % len(PALETTE)]
        c.parts.append(
            f'<line x1="{_num(c.sx(x - 0.6))}" y1="{_num(c.sy(y))}" x2="{_num(c.sx(x + 0.6))}" '
            f'y2="{_num(c.sy(y))}" stroke="{color}" stroke-width="2"/>'
        )
        c.text(c.sx(x), c.sy(y) - 5, lv.label, "middle", color)
    for t in diagram.transitions:
        a = slot.get(t.lower.n, 2.0)
        b = slot.get(t.upper.n, 2.0)
        dash = "" if t.kind == "allowed" else ' stroke-dasharray="4 3"'
        x_a = c.sx(a + (0.3 if b >= a else -0.3))
        x_b = c.sx(b - (0.3 if b > a else -0.3)) if a != b else x_a
        c.parts.append(
            f'<line x1="{_num(x_a)}" y1="{_num(c.sy(t.lower.energy / hbar_omega))}" x2="{_num(x_b)}" '
            f'y2="{_num(c.sy(t.upper.energy / hbar_omega))}" stroke="#555" stroke-width="0.8"{dash}/>'
        )
    c.text(c.px0 + 6, c.py1 + 14, "solid: allowed (delta l = 1), dashed: suppressed (delta l = 0)")
    return c.save(path)


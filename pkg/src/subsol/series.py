"""Tabulated curves and their CSV/JSON/SVG writers.

Output discipline: '.' decimal separator, '\\n' line endings, 17
significant digits (lossless double round-trip), no timestamps, and a
hard failure on any non-finite number, so identical inputs always produce
byte-identical files.  Files are written atomically (temp + rename).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FigureSeries",
    "atomic_write_text",
    "write_rows_csv",
    "write_series_csv",
    "write_series_json",
    "write_series_svg",
]


@dataclass(frozen=True)
class FigureSeries:
    """One named curve: y against x, plus free-form metadata."""

    label: str
    x: np.ndarray
    y: np.ndarray
    meta: dict = field(default_factory=dict)


def _fmt(value):
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"refusing to emit non-finite value {value!r}")
    return f"{v:.17g}"


def atomic_write_text(path, text):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_rows_csv(path, header, rows):
    """Write rows of numbers/strings under a header line."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else _fmt(c) for c in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_series_csv(path, x_name, series_list):
    """One shared x column followed by one value column per series."""
    x0 = np.asarray(series_list[0].x, dtype=float)
    for s in series_list:
        if not np.array_equal(np.asarray(s.x, dtype=float), x0):
            raise ValueError("all series in one CSV must share the x grid")
    header = [x_name] + [s.label for s in series_list]
    rows = []
    for i, xv in enumerate(x0):
        rows.append([xv] + [float(s.y[i]) for s in series_list])
    write_rows_csv(path, header, rows)


def write_series_json(path, x_name, series_list):
    payload = {
        "x_name": x_name,
        "series": [
            {
                "label": s.label,
                "meta": {k: s.meta[k] for k in sorted(s.meta)},
                "x": [float(_fmt(v)) for v in s.x],
                "y": [float(_fmt(v)) for v in s.y],
            }
            for s in series_list
        ],
    }
    atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


_PALETTE = ["#9ecae1", "#6baed6", "#4292c6", "#2171b5", "#084594",
            "#d94801", "#238b45", "#6a51a3"]

_W, _H, _PAD = 720, 480, 56.0


def write_series_svg(path, x_name, series_list, log_y=False, title=""):
    """Minimal polyline rendering; log_y applies log10 to the values."""
    xs = np.concatenate([np.asarray(s.x, dtype=float) for s in series_list])
    ys = np.concatenate([np.asarray(s.y, dtype=float) for s in series_list])
    if log_y:
        if np.any(ys <= 0.0):
            raise ValueError("log scale requires strictly positive values")
        ys = np.log10(ys)
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def px(x):
        return _PAD + (x - x_lo) / x_span * (_W - 2 * _PAD)

    def py(y):
        return _H - _PAD - (y - y_lo) / y_span * (_H - 2 * _PAD)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" '
        'stroke="black"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" stroke="black"/>',
    ]
    if title:
        parts.append(f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
                     f'font-size="15">{title}</text>')
    y_label = f"log10({x_name and 'value'})" if log_y else "value"
    parts.append(f'<text x="{_W - _PAD:.1f}" y="{_H - _PAD + 36:.1f}" '
                 f'text-anchor="end" font-size="12">{x_name}</text>')
    parts.append(f'<text x="{_PAD:.1f}" y="{_PAD - 10:.1f}" font-size="12">'
                 f'{y_label}</text>')
    for name, val in (("x", x_lo), ("x", x_hi)):
        parts.append(f'<text x="{px(val):.2f}" y="{_H - _PAD + 18:.1f}" '
                     f'text-anchor="middle" font-size="11">{_fmt(val)}</text>')
    for val in (y_lo, y_hi):
        parts.append(f'<text x="{_PAD - 6:.1f}" y="{py(val) + 4:.2f}" '
                     f'text-anchor="end" font-size="11">{_fmt(val)}</text>')
    for i, s in enumerate(series_list):
        color = _PALETTE[i % len(_PALETTE)]
        sy = np.log10(np.asarray(s.y, dtype=float)) if log_y else np.asarray(s.y, float)
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.x, sy))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{pts}"/>')
        parts.append(f'<text x="{_W - _PAD + 4:.1f}" y="{_PAD + 16 * i + 12:.1f}" '
                     f'font-size="11" fill="{color}">{s.label}</text>')
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")

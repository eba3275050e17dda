"""CSV and SVG output.

Floats are written with ``repr`` so that identical inputs give byte-identical
files; lines end with LF.
"""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+.17g}j"
    return str(v)


def write_csv(path: str | os.PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(float(v)) if hasattr(v, "dtype") and v.dtype.kind == "f" else _fmt(v) for v in row])
    return path


def scan_grid_rows(report):
    for g, a, t in zip(report.gammas, report.absL, report.tail):
        yield float(g), float(a), float(t)


def zero_rows(report):
    for z in report.zeros:
        yield (z.gamma, z.multiplicity, *z.derivatives)


def zero_header(D: int) -> list[str]:
    return ["gamma", "mult", *[f"d{j}" for j in range(D + 1)]]


def write_svg_plot(
    path: str | os.PathLike,
    series: dict[str, tuple[Sequence[float], Sequence[float]]],
    title: str,
    xlabel: str,
    ylabel: str,
    logx: bool = True,
    width: int = 640,
    height: int = 400,
) -> Path:
    """A standalone line plot, one polyline per series."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ml, mr, mt, mb = 70, 20, 40, 50
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys if math.isfinite(y)]
    tx = (lambda v: math.log10(v)) if logx else (lambda v: v)
    x0, x1 = (min(map(tx, xs_all)), max(map(tx, xs_all))) if xs_all else (0.0, 1.0)
    y0, y1 = (min(ys_all + [0.0]), max(ys_all + [0.0])) if ys_all else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    px = lambda v: ml + (tx(v) - x0) / (x1 - x0) * (width - ml - mr)
    py = lambda v: height - mb - (v - y0) / (y1 - y0) * (height - mt - mb)
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{escape(title)}</text>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12">{escape(xlabel)}</text>',
        f'<text x="16" y="{height / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 16 {height / 2})">{escape(ylabel)}</text>',
    ]
    for v, label in ((y0, f"{y0:.3g}"), (y1, f"{y1:.3g}")):
        parts.append(
            f'<text x="{ml - 6}" y="{py(v) + 4:.1f}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10">{label}</text>'
        )
    if xs_all:
        for v in (min(xs_all), max(xs_all)):
            parts.append(
                f'<text x="{px(v):.1f}" y="{height - mb + 14}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
            )
    for i, (name, (xs, ys)) in enumerate(series.items()):
        c = colors[i % len(colors)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(y))
        parts.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{pts}"/>')
        parts.append(
            f'<text x="{width - mr - 4}" y="{mt + 14 * (i + 1)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{c}">{escape(name)}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path

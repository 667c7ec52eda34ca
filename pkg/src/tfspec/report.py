"""CSV and SVG emission for convergence reports."""

from __future__ import annotations

import csv
import io
import math
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Sequence, Union

from .convergence import ConvergenceReport

CSV_HEADER = ("case", "alpha1", "alpha2", "d", "lambda", "N", "l2_error", "rate")

Reports = Union[ConvergenceReport, Sequence[ConvergenceReport]]


def _as_list(r: Reports) -> list[ConvergenceReport]:
    return [r] if isinstance(r, ConvergenceReport) else list(r)


def fmt(x: float) -> str:
    """17 significant digits: round-trips every double."""
    return format(float(x), ".17g")


def csv_text(reports: Reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_HEADER)
    for r in _as_list(reports):
        for n, err in r.rows:
            w.writerow(
                [r.case, fmt(r.alpha1), fmt(r.alpha2), fmt(r.d), fmt(r.lam), str(n), fmt(err), fmt(r.fitted_rate)]
            )
    return buf.getvalue()


# {{{ svg

WIDTH, HEIGHT = 640, 480
MARGIN = (70, 20, 30, 50)  # left, right, top, bottom
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _decades(lo: float, hi: float) -> range:
    return range(math.floor(lo), math.ceil(hi) + 1)


def svg_text(reports: Reports, guide_rates: Iterable[float] | None = None, title: str = "") -> str:
    """Log-log chart: one polyline per report plus dashed reference slopes.

    *guide_rates* defaults to the fitted rates rounded to the nearest half.
    """
    reports = _as_list(reports)
    pts = [[(math.log10(n), math.log10(e)) for n, e in r.rows if e > 0] for r in reports]
    flat = [p for series in pts for p in series]

    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(WIDTH),
        height=str(HEIGHT),
        viewBox=f"0 0 {WIDTH} {HEIGHT}",
    )
    ET.SubElement(root, "rect", x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="white")
    if title:
        ET.SubElement(root, "text", x=str(WIDTH // 2), y="18", **{"text-anchor": "middle"}).text = title

    left, right, top, bottom = MARGIN
    pw, ph = WIDTH - left - right, HEIGHT - top - bottom
    if flat:
        x0 = min(p[0] for p in flat)
        x1 = max(p[0] for p in flat)
        y0 = math.floor(min(p[1] for p in flat))
        y1 = math.ceil(max(p[1] for p in flat))
    else:
        x0, x1, y0, y1 = 0.0, 1.0, -1.0, 0.0
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1:
        y1 = y0 + 1

    def sx(u):
        return left + (u - x0) / (x1 - x0) * pw

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * ph

    def coords(u, v):
        return f"{sx(u):.2f},{sy(v):.2f}"

    axes = ET.SubElement(root, "g", stroke="black", fill="none")
    ET.SubElement(axes, "rect", x=str(left), y=str(top), width=str(pw), height=str(ph))
    labels = ET.SubElement(root, "g", **{"font-size": "11", "font-family": "sans-serif"})
    for k in _decades(y0, y1):
        if y0 <= k <= y1:
            ET.SubElement(axes, "line", x1=str(left - 4), x2=str(left), y1=f"{sy(k):.2f}", y2=f"{sy(k):.2f}")
            ET.SubElement(labels, "text", x=str(left - 8), y=f"{sy(k) + 4:.2f}", **{"text-anchor": "end"}).text = f"1e{k}"
    for r in reports[:1]:
        for n, _ in r.rows:
            u = math.log10(n)
            ET.SubElement(axes, "line", x1=f"{sx(u):.2f}", x2=f"{sx(u):.2f}", y1=str(top + ph), y2=str(top + ph + 4))
            ET.SubElement(labels, "text", x=f"{sx(u):.2f}", y=str(top + ph + 18), **{"text-anchor": "middle"}).text = str(n)
    ET.SubElement(labels, "text", x=str(left + pw // 2), y=str(HEIGHT - 8), **{"text-anchor": "middle"}).text = "N"
    ET.SubElement(
        labels, "text", x="14", y=str(top + ph // 2), transform=f"rotate(-90 14 {top + ph // 2})", **{"text-anchor": "middle"}
    ).text = "L2 error"

    if guide_rates is None:
        guide_rates = sorted({round(2.0 * r.fitted_rate) / 2.0 for r in reports if math.isfinite(r.fitted_rate)})
    if flat:
        ux, uy = pts[0][0] if pts[0] else flat[0]
        guides = ET.SubElement(root, "g", stroke="gray", **{"stroke-dasharray": "4 3"})
        for rate in guide_rates:
            # clip the guide to the plot box
            end = min(x1, ux + (uy - y0) / rate) if rate > 0 else x1
            ET.SubElement(guides, "line", x1=f"{sx(ux):.2f}", y1=f"{sy(uy):.2f}", x2=f"{sx(end):.2f}", y2=f"{sy(uy - rate * (end - ux)):.2f}")
            ET.SubElement(labels, "text", x=f"{sx(end) - 4:.2f}", y=f"{sy(uy - rate * (end - ux)) - 4:.2f}", fill="gray", **{"text-anchor": "end"}).text = f"N^-{rate:g}"

    for i, (r, series) in enumerate(zip(reports, pts)):
        color = COLORS[i % len(COLORS)]
        ET.SubElement(
            root,
            "polyline",
            points=" ".join(coords(u, v) for u, v in series),
            fill="none",
            stroke=color,
            **{"stroke-width": "1.5", "class": "series"},
        )
        ET.SubElement(labels, "text", x=str(left + pw - 6), y=str(top + 16 + 14 * i), fill=color, **{"text-anchor": "end"}).text = (
            f"{r.case} a1={r.alpha1:g} a2={r.alpha2:g} d={r.d:g} rate={r.fitted_rate:.2f}"
        )

    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


# }}}


def write_text(path: Path | str, text: str) -> None:
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc


def emit_report(
    reports: Reports,
    csv_path: Path | str,
    svg_path: Path | str | None = None,
    guide_rates: Iterable[float] | None = None,
) -> None:
    """Write the CSV table and, if *svg_path* is given, the log-log chart."""
    write_text(csv_path, csv_text(reports))
    if svg_path is not None:
        write_text(svg_path, svg_text(reports, guide_rates))

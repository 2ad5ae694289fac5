"""SVG and ASCII rendering of step functions and of the permutation diagram."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Sequence

from gchoquet.core import INF, StepFunction

__all__ = ["step_svg", "step_ascii", "permutation_svg", "permutation_ascii"]

WIDTH, HEIGHT, MARGIN = 480, 320, 48


def _label(v) -> str:
    if v == INF:
        return "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{float(v):.4g}"


def _svg_root(width=WIDTH, height=HEIGHT) -> ET.Element:
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )


def _text(parent, x, y, s, anchor="middle"):
    t = ET.SubElement(parent, "text", x=f"{x:.2f}", y=f"{y:.2f}")
    t.set("font-size", "11")
    t.set("text-anchor", anchor)
    t.text = s


def step_svg(
    f: StepFunction,
    x_ticks: Sequence | None = None,
    y_ticks: Sequence | None = None,
    title: str = "",
    x_label: str = "α",
) -> str:
    """Staircase plot; the last finite breakpoint is padded by 15% for the tail."""
    ends = [b for b in f.breakpoints]
    right = float(ends[-1]) * 1.15 if ends[-1] > 0 else 1.0
    top = float(max(max(f.values), 1e-12)) * 1.1
    x_ticks = list(x_ticks) if x_ticks is not None else ends
    y_ticks = list(y_ticks) if y_ticks is not None else sorted(set(f.values))
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(a):
        return MARGIN + plot_w * (float(a) / right)

    def py(v):
        return HEIGHT - MARGIN - plot_h * (float(v) / top)

    root = _svg_root()
    if title:
        _text(root, WIDTH / 2, MARGIN / 2, title)
    axes = ET.SubElement(root, "g", stroke="black")
    ET.SubElement(axes, "line", x1=str(MARGIN), y1=str(HEIGHT - MARGIN), x2=str(WIDTH - MARGIN / 2), y2=str(HEIGHT - MARGIN))
    ET.SubElement(axes, "line", x1=str(MARGIN), y1=str(HEIGHT - MARGIN), x2=str(MARGIN), y2=str(MARGIN / 2))
    _text(root, WIDTH - MARGIN / 2, HEIGHT - MARGIN + 16, x_label, "end")
    for a in x_ticks:
        _text(root, px(a), HEIGHT - MARGIN + 16, _label(a))
    for v in y_ticks:
        _text(root, MARGIN - 6, py(v) + 4, _label(v), "end")
    steps = ET.SubElement(root, "g", stroke="steelblue")
    steps.set("stroke-width", "2")
    for lo, hi, v in f.pieces():
        x2 = WIDTH - MARGIN / 2 if hi == INF else px(hi)
        ET.SubElement(steps, "line", x1=f"{px(lo):.2f}", y1=f"{py(v):.2f}", x2=f"{x2:.2f}", y2=f"{py(v):.2f}")
        ET.SubElement(steps, "circle", cx=f"{px(lo):.2f}", cy=f"{py(v):.2f}", r="3", fill="steelblue")
        if hi != INF:
            ET.SubElement(steps, "circle", cx=f"{x2:.2f}", cy=f"{py(v):.2f}", r="3", fill="white")
    return ET.tostring(root, encoding="unicode")


def step_ascii(f: StepFunction, width: int = 60, height: int = 10) -> str:
    """Monospace staircase with one row per distinct value."""
    values = sorted(set(f.values), reverse=True)
    ends = list(f.breakpoints)
    right = ends[-1] * Fraction(23, 20) if ends[-1] > 0 else Fraction(1)

    def col(a):
        return min(width - 1, int(Fraction(a) / right * (width - 1)))

    rows = values[:height] if len(values) > height else values
    label_w = max(len(_label(v)) for v in rows)
    lines = []
    for v in rows:
        cells = [" "] * width
        for lo, hi, w in f.pieces():
            if w != v:
                continue
            end = width if hi == INF else col(hi)
            for c in range(col(lo), max(end, col(lo) + 1)):
                cells[c] = "─"
            cells[col(lo)] = "●"
            if hi != INF and end < width:
                cells[end] = "○"
        lines.append(f"{_label(v).rjust(label_w)} ┤{''.join(cells).rstrip()}")
    axis = [" "] * width
    for b in ends:
        axis[col(b)] = "┴"
    lines.append(" " * label_w + " └" + "".join(axis).replace(" ", "─"))
    ticks = [" "] * (width + 8)
    for b in ends:
        s = _label(b)
        start = col(b)
        if all(ch == " " for ch in ticks[start:start + len(s) + 1]):
            ticks[start:start + len(s)] = list(s)
    lines.append(" " * (label_w + 2) + "".join(ticks).rstrip())
    return "\n".join(lines)


def permutation_svg(pi: Sequence[int], title: str = "") -> str:
    """Two-row bipartite diagram: ``i`` on top joined to ``(i)`` below."""
    k = len(pi)
    gap = (WIDTH - 2 * MARGIN) / max(k - 1, 1)
    top_y, bottom_y = MARGIN + 20, HEIGHT - MARGIN - 20
    root = _svg_root()
    if title:
        _text(root, WIDTH / 2, MARGIN / 2, title)
    edges = ET.SubElement(root, "g", stroke="gray")
    for i, j in enumerate(pi):
        ET.SubElement(
            edges, "line",
            x1=f"{MARGIN + i * gap:.2f}", y1=str(top_y),
            x2=f"{MARGIN + j * gap:.2f}", y2=str(bottom_y),
        )
    for row_y, name in ((top_y, "E"), (bottom_y, "F")):
        for i in range(k):
            cx = MARGIN + i * gap
            ET.SubElement(root, "circle", cx=f"{cx:.2f}", cy=str(row_y), r="4", fill="black")
            offset = -10 if name == "E" else 20
            _text(root, cx, row_y + offset, f"{name}{i}")
    return ET.tostring(root, encoding="unicode")


def permutation_ascii(pi: Sequence[int]) -> str:
    width = max(len(str(len(pi) - 1)), 1) + 1
    top = "i   " + "".join(str(i).rjust(width) for i in range(len(pi)))
    bottom = "(i) " + "".join(str(j).rjust(width) for j in pi)
    return f"{top}\n{bottom}"

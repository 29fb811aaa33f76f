"""
Support diagrams for coarse degrees in Z^1 and Z^2.

ASCII grids put the top row at the largest second coordinate; the SVG output
draws the lattice as small grey dots with the support as filled discs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from lattice.regions import PointSet
from utils.errors import UsageError

CELL = 20
MARGIN = 30


@dataclass(frozen=True)
class RenderSpec:
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]
    labels: Tuple[str, ...] = ("n1", "n2")
    marker: str = "#"
    empty: str = "."
    origin: str = "+"

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise UsageError("window corners have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise UsageError(f"empty window {self.lo}..{self.hi}")

    @classmethod
    def square(cls, rank: int, lo: int, hi: int, **kwargs) -> "RenderSpec":
        return cls((lo,) * rank, (hi,) * rank, **kwargs)

    @property
    def rank(self) -> int:
        return len(self.lo)


def parse_window(text: str) -> Tuple[int, int]:
    """'lo:hi' -> (lo, hi)."""
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError(text)
        bounds = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must be lo:hi, got {text!r}") from None
    if bounds[0] > bounds[1]:
        raise UsageError(f"empty window {text!r}")
    return bounds


def _require_drawable(points: PointSet, spec: RenderSpec) -> None:
    if points.rank not in (1, 2):
        raise UsageError(f"diagrams need rank 1 or 2, got rank {points.rank}; use --format json")
    if spec.rank != points.rank:
        raise UsageError(f"window of rank {spec.rank} for a rank-{points.rank} support")


def _rows(spec: RenderSpec) -> List[int]:
    if spec.rank == 1:
        return [0]
    return list(range(spec.hi[1], spec.lo[1] - 1, -1))


def _degree(x: int, y: int, spec: RenderSpec) -> Tuple[int, ...]:
    return (x,) if spec.rank == 1 else (x, y)


def render_ascii(points: PointSet, spec: RenderSpec, title: str = "") -> str:
    _require_drawable(points, spec)
    inside = set(points.points_in(spec.lo, spec.hi))
    columns = range(spec.lo[0], spec.hi[0] + 1)
    out: List[str] = [title] if title else []
    for y in _rows(spec):
        cells = []
        for x in columns:
            a = _degree(x, y, spec)
            if a in inside:
                cells.append(spec.marker)
            elif not any(a):
                cells.append(spec.origin)
            else:
                cells.append(spec.empty)
        label = f"{y:>4}" if spec.rank == 2 else "    "
        out.append(f"{label} | {' '.join(cells)}")
    axis = f"{spec.labels[0]}: {spec.lo[0]}..{spec.hi[0]}"
    if spec.rank == 2:
        axis += f", {spec.labels[1]}: {spec.lo[1]}..{spec.hi[1]} (top to bottom)"
    out.append(f"       {axis}")
    return "\n".join(out) + "\n"


def render_svg(points: PointSet, spec: RenderSpec, title: str = "") -> str:
    _require_drawable(points, spec)
    inside = set(points.points_in(spec.lo, spec.hi))
    rows = _rows(spec)
    width = (spec.hi[0] - spec.lo[0]) * CELL + 2 * MARGIN
    height = (len(rows) - 1) * CELL + 2 * MARGIN

    def px(x: int) -> int:
        return MARGIN + (x - spec.lo[0]) * CELL

    def py(y: int) -> int:
        return MARGIN + rows.index(y) * CELL

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if title:
        out.append(f'  <title>{_escape(title)}</title>')
    if spec.lo[0] <= 0 <= spec.hi[0] and spec.rank == 2:
        out.append(
            f'  <line x1="{px(0)}" y1="{MARGIN // 2}" x2="{px(0)}" y2="{height - MARGIN // 2}" '
            'stroke="black" stroke-width="1"/>'
        )
    if 0 in rows:
        out.append(
            f'  <line x1="{MARGIN // 2}" y1="{py(0)}" x2="{width - MARGIN // 2}" y2="{py(0)}" '
            'stroke="black" stroke-width="1"/>'
        )
    for y in rows:
        for x in range(spec.lo[0], spec.hi[0] + 1):
            if _degree(x, y, spec) in inside:
                out.append(f'  <circle cx="{px(x)}" cy="{py(y)}" r="5" fill="black"/>')
            else:
                out.append(f'  <circle cx="{px(x)}" cy="{py(y)}" r="1.5" fill="#999999"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render(points: PointSet, spec: RenderSpec, fmt: str, title: str = "") -> str:
    if fmt == "ascii":
        return render_ascii(points, spec, title)
    if fmt == "svg":
        return render_svg(points, spec, title)
    raise UsageError(f"cannot draw format {fmt!r}")

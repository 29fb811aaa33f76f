"""Staircase cell decompositions and the region sets they produce."""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from algebra.modules import Summand
from lattice.regions import Bound, Box, PointSet

CellIndex = Tuple[int, ...]


@dataclass(frozen=True)
class Cell:
    box: Box
    payload: Optional[int] = None

    def to_json(self) -> dict:
        data = self.box.to_json()
        if self.payload is not None:
            data["dim"] = self.payload
        return data


@dataclass(frozen=True)
class RegionSet:
    """Disjoint union of fine cells, each optionally carrying a dimension."""

    rank: int
    cells: Tuple[Cell, ...] = ()

    @classmethod
    def empty(cls, rank: int) -> "RegionSet":
        return cls(rank, ())

    def is_empty(self) -> bool:
        return not self.cells

    def boxes(self) -> List[Box]:
        return [c.box for c in self.cells]

    def contains(self, a: Sequence[int]) -> bool:
        return any(c.box.contains(a) for c in self.cells)

    def dim_at(self, a: Sequence[int]) -> int:
        for c in self.cells:
            if c.box.contains(a):
                return c.payload if c.payload is not None else 1
        return 0

    def as_pointset(self) -> PointSet:
        return PointSet.of_boxes(self.boxes(), self.rank)

    def restrict(self, lo: Sequence[int], hi: Sequence[int]) -> Dict[Tuple[int, ...], int]:
        """Explicit degree -> dimension table inside a window."""
        table = {}
        for c in self.cells:
            for a in c.box.clip(lo, hi).points():
                table[a] = c.payload if c.payload is not None else 1
        return table

    def to_json(self) -> List[dict]:
        return [c.to_json() for c in self.cells]


def localization_support(summand: Summand, inverted: Iterable[int]) -> RegionSet:
    """
    Fine support of (S(-a0)/I)[x_F^-1] as a disjoint box union: F-coordinates
    are free, the others range over the standard monomials of sat_F(I) shifted
    by a0.
    """
    inverted = frozenset(inverted)
    n = len(summand.shift)
    sat = summand.ideal.saturate(inverted)
    if sat.is_unit():
        return RegionSet.empty(n)
    axes: List[List[Tuple[int, Bound]]] = []
    for k in range(n):
        if k in inverted:
            axes.append([(0, None)])
            continue
        cuts = sorted({0} | set(sat.breakpoints(k)))
        axes.append(
            [(lo, nxt - 1) for lo, nxt in zip(cuts, cuts[1:])] + [(cuts[-1], None)]
        )
    cells = []
    for combo in itertools.product(*axes):
        corner = [0 if k in inverted else lo for k, (lo, _) in enumerate(combo)]
        if sat.contains(corner):
            continue
        lo_bounds, hi_bounds = [], []
        for k, (lo, hi) in enumerate(combo):
            if k in inverted:
                lo_bounds.append(None)
                hi_bounds.append(None)
            else:
                lo_bounds.append(lo + summand.shift[k])
                hi_bounds.append(None if hi is None else hi + summand.shift[k])
        cells.append(Cell(Box(tuple(lo_bounds), tuple(hi_bounds))))
    return RegionSet(n, tuple(cells))


@dataclass(frozen=True)
class CellDecomposition:
    """
    The grid cut out by per-coordinate breakpoints b_0 < ... < b_p: intervals
    (-inf, b_0-1], [b_0, b_1-1], ..., [b_p, inf) and their products.
    """

    breakpoints: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_breakpoints(cls, points: Sequence[Iterable[int]]) -> "CellDecomposition":
        return cls(tuple(tuple(sorted(set(p) or {0})) for p in points))

    @property
    def rank(self) -> int:
        return len(self.breakpoints)

    def intervals(self, k: int) -> List[Tuple[Bound, Bound]]:
        cuts = self.breakpoints[k]
        return (
            [(None, cuts[0] - 1)]
            + [(lo, nxt - 1) for lo, nxt in zip(cuts, cuts[1:])]
            + [(cuts[-1], None)]
        )

    def index_of(self, a: Sequence[int]) -> CellIndex:
        return tuple(bisect.bisect_right(self.breakpoints[k], x) for k, x in enumerate(a))

    def cells(self) -> Iterator[CellIndex]:
        return itertools.product(*(range(len(b) + 1) for b in self.breakpoints))

    def box(self, index: CellIndex) -> Box:
        bounds = [self.intervals(k)[i] for k, i in enumerate(index)]
        return Box(tuple(lo for lo, _ in bounds), tuple(hi for _, hi in bounds))

    def representative(self, index: CellIndex) -> Tuple[int, ...]:
        point = []
        for k, i in enumerate(index):
            lo, hi = self.intervals(k)[i]
            point.append(lo if lo is not None else hi)
        return tuple(point)

    def alternate(self, index: CellIndex) -> Tuple[int, ...]:
        """A second sample point of the cell, far from the representative where possible."""
        point = []
        for k, i in enumerate(index):
            lo, hi = self.intervals(k)[i]
            if lo is None:
                point.append(hi - 3)
            elif hi is None:
                point.append(lo + 3)
            else:
                point.append(hi)
        return tuple(point)

    def cap(self, k: int) -> int:
        """Shift beyond which multiplication along coordinate k realizes no new cell pairs."""
        cuts = self.breakpoints[k]
        return cuts[-1] - cuts[0] + 1

    def shift_pairs(self, k: int, shift: int) -> Dict[Tuple[int, int], int]:
        """Realizable (cell of x, cell of x+shift) index pairs along coordinate k, with a witness x."""
        cuts = self.breakpoints[k]
        events = sorted(set(cuts) | {b - shift for b in cuts})
        samples = [events[0] - 1] + events
        pairs: Dict[Tuple[int, int], int] = {}
        for x in samples:
            key = (bisect.bisect_right(cuts, x), bisect.bisect_right(cuts, x + shift))
            pairs.setdefault(key, x)
        return pairs

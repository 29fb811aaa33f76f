"""
Global, exact cohomology queries on top of cell decompositions.

The degreewise data of a Čech or Koszul complex only depends on which
staircase cell the fine degree lies in, so every global question (support,
component dimensions, annihilation by monomials) reduces to finitely many
slice computations.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from threading import Lock
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.constructions import monomials_of_degree
from algebra.grading import GradingSpec
from algebra.modules import GradedModule
from algebra.monomials import MonomialIdeal
from config.settings import get_settings
from engine.cells import Cell, CellDecomposition, CellIndex, RegionSet
from engine.complexes import CechComplex, KoszulComplex, SliceComplex, slice_cohomology
from lattice.degrees import scale
from lattice.regions import Bound, Box, PointSet
from utils.errors import EngineInvariantError, PreconditionError

logger = logging.getLogger(__name__)

INFINITE = math.inf
Dimension = Union[int, float]


@dataclass(frozen=True)
class DecomposedComplex:
    complex: SliceComplex
    decomposition: CellDecomposition
    dims: Dict[CellIndex, Tuple[int, ...]]

    def nonzero_cells(self, i: int) -> List[CellIndex]:
        return [idx for idx, d in self.dims.items() if i < len(d) and d[i] > 0]

    def region(self, i: int) -> RegionSet:
        return RegionSet(
            self.decomposition.rank,
            tuple(
                Cell(self.decomposition.box(idx), self.dims[idx][i])
                for idx in self.nonzero_cells(i)
            ),
        )


def count_fixed_sum(intervals: Sequence[Tuple[Bound, Bound]], total: int) -> Dimension:
    """Number of integer points in a box with coordinate sum equal to total."""
    if not intervals:
        return 1 if total == 0 else 0
    los = [lo for lo, _ in intervals]
    his = [hi for _, hi in intervals]
    if None not in los and total < sum(los):
        return 0
    if None not in his and total > sum(his):
        return 0
    up = [k for k, hi in enumerate(his) if hi is None]
    down = [k for k, lo in enumerate(los) if lo is None]
    if any(a != b for a in up for b in down):
        return INFINITE
    if up and down:
        # a single coordinate is free in both directions and absorbs the sum
        free = up[0]
        return math.prod(his[k] - los[k] + 1 for k in range(len(intervals)) if k != free)
    tight = []
    for k in range(len(intervals)):
        others = [j for j in range(len(intervals)) if j != k]
        lo = los[k] if los[k] is not None else total - sum(his[j] for j in others)
        hi = his[k] if his[k] is not None else total - sum(los[j] for j in others)
        tight.append((lo, hi))
    ways: Dict[int, int] = {0: 1}
    for lo, hi in tight:
        step: Dict[int, int] = defaultdict(int)
        for partial, count in ways.items():
            for x in range(lo, hi + 1):
                step[partial + x] += count
        ways = step
    return ways.get(total, 0)


def fiber_count(box: Box, grading: GradingSpec, n: Sequence[int]) -> Dimension:
    """Number of fine degrees in box with coarse degree n."""
    factors: List[Dimension] = []
    for color in range(1, grading.rank + 1):
        members = grading.variables_of_color(color)
        factors.append(count_fixed_sum([box.interval(k) for k in members], n[color - 1]))
    for k in grading.variables_of_color(0):
        lo, hi = box.interval(k)
        factors.append(INFINITE if lo is None or hi is None else hi - lo + 1)
    if any(f == 0 for f in factors):
        return 0
    return INFINITE if INFINITE in factors else math.prod(factors)


def coarse_image(region: RegionSet, grading: GradingSpec) -> PointSet:
    """Coarse support: image of a fine region under the degree matrix."""
    return region.as_pointset().image(grading.coarse_projection())


def _clip(c: Sequence[int], caps: Sequence[int]) -> Tuple[int, ...]:
    return tuple(min(x, cap) for x, cap in zip(c, caps))


class CohomologyEngine:
    """Evaluates slice complexes cell by cell and answers global questions."""

    def __init__(self, max_workers: Optional[int] = None, check_constancy: bool = False):
        self.max_workers = max_workers or get_settings().MAX_WORKERS
        self.check_constancy = check_constancy
        self._cache: Dict[SliceComplex, DecomposedComplex] = {}
        self._lock = Lock()

    def fine_slice_cohomology(self, C: SliceComplex, a: Sequence[int]) -> Tuple[int, ...]:
        return slice_cohomology(C, a)

    def decompose(self, C: SliceComplex) -> DecomposedComplex:
        with self._lock:
            cached = self._cache.get(C)
        if cached is not None:
            return cached

        decomposition = CellDecomposition.from_breakpoints(C.breakpoints())
        cells = list(decomposition.cells())
        reps = [decomposition.representative(idx) for idx in cells]
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            results = list(executor.map(lambda a: slice_cohomology(C, a), reps))
        dims = dict(zip(cells, results))
        logger.debug(
            "cell decomposition built",
            extra={"complex": type(C).__name__, "cells": len(cells)},
        )

        if self.check_constancy:
            for idx in cells:
                other = decomposition.alternate(idx)
                if slice_cohomology(C, other) != dims[idx]:
                    raise EngineInvariantError(
                        f"slice cohomology not constant on cell {decomposition.box(idx)}",
                        payload={"sample": list(other)},
                    )

        decomposed = DecomposedComplex(C, decomposition, dims)
        with self._lock:
            self._cache[C] = decomposed
        return decomposed

    # -- supports -----------------------------------------------------------

    def support_of(self, C: SliceComplex, i: int) -> RegionSet:
        if not 0 <= i <= C.length:
            return RegionSet.empty(C.module.grading.n)
        return self.decompose(C).region(i)

    def global_support(self, b: MonomialIdeal, M: GradedModule, i: int) -> RegionSet:
        """Fine support of H^i_b(M), one cell per nonzero slice class."""
        return self.support_of(CechComplex(b, M), i)

    def coarse_support(self, b: MonomialIdeal, M: GradedModule, i: int) -> PointSet:
        return coarse_image(self.global_support(b, M, i), M.grading)

    def ext_support(self, variables: Sequence[int], M: GradedModule, i: int, inverted=frozenset()) -> RegionSet:
        return self.support_of(KoszulComplex(tuple(sorted(variables)), M, frozenset(inverted)), i)

    def vanishes(self, b: MonomialIdeal, M: GradedModule, i: int) -> bool:
        return self.global_support(b, M, i).is_empty()

    def component_dim(self, b: MonomialIdeal, M: GradedModule, i: int, n: Sequence[int]) -> Dimension:
        """dim_k H^i_b(M)_n, or INFINITE."""
        g = M.grading
        if len(n) != g.rank:
            raise PreconditionError(f"coarse degree {tuple(n)} does not have rank {g.rank}")
        total: Dimension = 0
        for cell in self.global_support(b, M, i).cells:
            count = fiber_count(cell.box, g, n)
            if count:
                total += count * cell.payload
        return total

    def infinite_component(self, b: MonomialIdeal, M: GradedModule, i: int) -> Optional[Tuple[int, ...]]:
        """A coarse degree with an infinite-dimensional component of H^i_b(M), if any."""
        g = M.grading
        for cell in self.global_support(b, M, i).cells:
            box = cell.box
            for k in g.variables_of_color(0):
                if None in box.interval(k):
                    return self._coarse_sample(box, g)
            for color in range(1, g.rank + 1):
                members = g.variables_of_color(color)
                up = [k for k in members if box.hi[k] is None]
                down = [k for k in members if box.lo[k] is None]
                if any(a != b for a in up for b in down):
                    return self._coarse_sample(box, g)
        return None

    @staticmethod
    def _coarse_sample(box: Box, g: GradingSpec) -> Tuple[int, ...]:
        point = [lo if lo is not None else (hi if hi is not None else 0) for lo, hi in zip(box.lo, box.hi)]
        return g.degree_of(point)

    # -- annihilation -------------------------------------------------------

    def kills(self, C: SliceComplex, k: int, c: Sequence[int]) -> bool:
        """Whether multiplication by x^c is zero on H^k of C in every degree."""
        decomposed = self.decompose(C)
        if not decomposed.nonzero_cells(k):
            return True
        cells = decomposed.decomposition
        c = _clip(c, [cells.cap(j) for j in range(cells.rank)])
        axes = [list(cells.shift_pairs(j, c[j]).items()) for j in range(cells.rank)]
        for combo in itertools.product(*axes):
            source = tuple(pair[0] for pair, _ in combo)
            target = tuple(pair[1] for pair, _ in combo)
            if not decomposed.dims[source][k] or not decomposed.dims[target][k]:
                continue
            a = tuple(x for _, x in combo)
            if not self._map_is_zero(C, k, a, c):
                return False
        return True

    def _map_is_zero(self, C: SliceComplex, k: int, a: Tuple[int, ...], c: Tuple[int, ...]) -> bool:
        field = C.field
        cycles = field.nullspace(C.differential(k, a))
        if cycles.shape[1] == 0:
            return True
        image = C.multiplication(k, a, c).dot(cycles)
        target = tuple(x + y for x, y in zip(a, c))
        if k == 0:
            return field.rank(image) == 0
        return field.in_column_span(C.differential(k - 1, target), image)

    def annihilation_exponent(self, b: MonomialIdeal, M: GradedModule, i: int, m: Sequence[int]) -> Optional[int]:
        """Least u with R_{um} H^i_b(M) = 0; None when no power annihilates."""
        g = M.grading
        m = tuple(m)
        if len(m) != g.rank or any(v < 0 for v in m) or not any(m):
            raise PreconditionError(f"m must lie in N_0^{g.rank} minus 0, got {m}")
        C = CechComplex(b, M)
        if i > C.length or not self.decompose(C).nonzero_cells(i):
            return 0
        cells = self.decompose(C).decomposition
        caps = [cells.cap(j) for j in range(cells.rank)]
        limit = 1
        for color in range(1, g.rank + 1):
            if m[color - 1]:
                budget = sum(caps[j] for j in g.variables_of_color(color)) + 1
                limit = max(limit, -(-budget // m[color - 1]))
        for u in range(1, limit + 1):
            classes = {_clip(mono, caps) for mono in monomials_of_degree(g, scale(u, m))}
            if all(self.kills(C, i, c) for c in sorted(classes)):
                logger.debug("annihilated", extra={"index": i, "m": m, "u": u})
                return u
        return None

    def monomial_nilpotency(self, b: MonomialIdeal, M: GradedModule, i: int, v: Sequence[int]) -> Optional[int]:
        """Least u with x^{uv} H^i_b(M) = 0; None when x^v is not nilpotent on it."""
        C = CechComplex(b, M)
        if i > C.length or not self.decompose(C).nonzero_cells(i):
            return 0
        if not any(v):
            return None
        cells = self.decompose(C).decomposition
        caps = [cells.cap(j) for j in range(cells.rank)]
        limit = max(-(-caps[j] // e) for j, e in enumerate(v) if e)
        for u in range(1, limit + 1):
            if self.kills(C, i, _clip(scale(u, v), caps)):
                return u
        return None

    def describe(self, b: MonomialIdeal, M: GradedModule, i: int) -> str:
        region = self.global_support(b, M, i)
        return (
            f"H^{i}_{b.format(M.grading.names)}({M.format()}): "
            f"{len(region.cells)} cells, coarse {coarse_image(region, M.grading)}"
        )


def fine_slice_cohomology(C: SliceComplex, a: Sequence[int]) -> Tuple[int, ...]:
    return slice_cohomology(C, a)


def format_dimension(d: Dimension) -> str:
    return "INFINITE" if d == INFINITE else str(d)

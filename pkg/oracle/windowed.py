"""
Brute-force reference engine.

Everything here is recomputed degree by degree from explicit monomial bases
and the literal localization colimit. It must stay naive: it exists to
disagree with the cell engine when the cell engine is wrong, so do not
optimize it or route it through engine code.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np

from algebra.modules import GradedModule, Summand
from config.settings import get_settings
from engine.complexes import CechComplex, KoszulComplex
from lattice.degrees import Degree
from lattice.regions import PointSet
from utils.errors import PreconditionError
from utils.linalg import FieldSpec

if TYPE_CHECKING:
    from engine.cohomology import CohomologyEngine


@dataclass(frozen=True)
class Window:
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise PreconditionError(f"empty or malformed window {self.lo}..{self.hi}")

    @classmethod
    def cube(cls, rank: int, lo: int, hi: int) -> "Window":
        return cls((lo,) * rank, (hi,) * rank)

    def points(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def contains(self, a: Sequence[int]) -> bool:
        return all(x <= y <= z for x, y, z in zip(self.lo, a, self.hi))


def _survives(summand: Summand, inverted_monomial: Sequence[int], a: Sequence[int]) -> bool:
    """Is x^(a - a0) nonzero in (S(-a0)/I)[1/x^y]? Decided through x^(a - a0 + N y)."""
    e = [x - s for x, s in zip(a, summand.shift)]
    if any(v < 0 for v, y in zip(e, inverted_monomial) if y == 0):
        return False
    big = summand.ideal.max_exponent() + max((abs(v) for v in e), default=0) + 1
    lifted = [v + big * y for v, y in zip(e, inverted_monomial)]
    for g in summand.ideal.generators:
        if all(gk <= lk for gk, lk in zip(g, lifted)):
            return False
    return True


def _product(monomials: Sequence[Sequence[int]], n: int) -> List[int]:
    total = [0] * n
    for mono in monomials:
        for k, e in enumerate(mono):
            total[k] += e
    return total


def _cech_terms(C: CechComplex, a: Sequence[int]) -> List[List[Tuple[Tuple[int, ...], int]]]:
    gens = C.ideal.generators
    n = C.module.grading.n
    terms = []
    for k in range(len(gens) + 1):
        labels = []
        for face in itertools.combinations(range(len(gens)), k):
            y = _product([gens[t] for t in face], n)
            for j, summand in enumerate(C.module.summands):
                if _survives(summand, y, a):
                    labels.append((face, j))
        terms.append(labels)
    return terms


def _koszul_terms(C: KoszulComplex, a: Sequence[int]) -> List[List[Tuple[Tuple[int, ...], int]]]:
    n = C.module.grading.n
    y = [1 if k in C.inverted else 0 for k in range(n)]
    terms = []
    for k in range(len(C.variables) + 1):
        labels = []
        for face in itertools.combinations(C.variables, k):
            shifted = [x + (1 if idx in face else 0) for idx, x in enumerate(a)]
            for j, summand in enumerate(C.module.summands):
                if _survives(summand, y, shifted):
                    labels.append((face, j))
        terms.append(labels)
    return terms


def _terms(C, a):
    if isinstance(C, CechComplex):
        return _cech_terms(C, a)
    return _koszul_terms(C, a)


def _matrix(field: FieldSpec, source, target) -> np.ndarray:
    matrix = field.zeros(len(target), len(source))
    for col, (face, j) in enumerate(source):
        for row, (face2, j2) in enumerate(target):
            if j2 != j or len(face2) != len(face) + 1 or not set(face) <= set(face2):
                continue
            (new,) = set(face2) - set(face)
            matrix[row, col] = -1 if sum(1 for t in face if t < new) % 2 else 1
    return matrix


def degree_cohomology(C: Union[CechComplex, KoszulComplex], a: Sequence[int]) -> Tuple[int, ...]:
    field = C.module.grading.field
    terms = _terms(C, a)
    ranks = [
        field.rank(_matrix(field, terms[k], terms[k + 1])) if k + 1 < len(terms) else 0
        for k in range(len(terms))
    ]
    return tuple(
        len(terms[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(len(terms))
    )


def windowed_cohomology(
    C: Union[CechComplex, KoszulComplex], window: Window
) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Per-degree cohomology dimensions on every fine degree of the window."""
    points = list(window.points())
    with ThreadPoolExecutor(max_workers=get_settings().MAX_WORKERS) as executor:
        dims = list(executor.map(lambda a: degree_cohomology(C, a), points))
    return dict(zip(points, dims))


def support_mismatches(
    C: Union[CechComplex, KoszulComplex], engine: "CohomologyEngine", window: Window
) -> List[int]:
    """Indices i where the engine's support of H^i, cut to the window, differs from the brute force."""
    table = windowed_cohomology(C, window)
    bad = []
    for i in range(C.length + 1):
        found = {a: d[i] for a, d in table.items() if i < len(d) and d[i]}
        if engine.support_of(C, i).restrict(window.lo, window.hi) != found:
            bad.append(i)
    return bad


def windowed_support(C, i: int, window: Window) -> Dict[Tuple[int, ...], int]:
    """Nonzero degrees of H^i in the window with their dimensions."""
    return {a: d[i] for a, d in windowed_cohomology(C, window).items() if i < len(d) and d[i]}


def windowed_kills(C, k: int, c: Sequence[int], window: Window) -> bool:
    """Multiplication by x^c is zero on H^k at every degree a with a, a+c in the window."""
    field = C.module.grading.field
    for a in window.points():
        target = tuple(x + y for x, y in zip(a, c))
        if not window.contains(target):
            continue
        here, there = _terms(C, a), _terms(C, target)
        if k >= len(here) or not here[k]:
            continue
        outgoing = _matrix(field, here[k], here[k + 1] if k + 1 < len(here) else [])
        cycles = field.nullspace(outgoing)
        if cycles.shape[1] == 0:
            continue
        mult = field.zeros(len(there[k]), len(here[k]))
        for col, label in enumerate(here[k]):
            if label in there[k]:
                mult[there[k].index(label), col] = 1
        image = mult.dot(cycles)
        if k == 0:
            if field.rank(image):
                return False
            continue
        boundaries = _matrix(field, there[k - 1], there[k])
        if not field.in_column_span(boundaries, image):
            return False
    return True


def windowed_anchor_points(
    variables: Sequence[int],
    M: GradedModule,
    i: int,
    directions: Sequence[int],
    window: Window,
) -> PointSet:
    """Projections to the direction colors of degrees where the localized Ext is nonzero."""
    g = M.grading
    outside = frozenset(k for k in range(g.n) if k not in set(variables))
    C = KoszulComplex(tuple(sorted(variables)), M, outside)
    found = set()
    for a in windowed_support(C, i, window):
        coarse = g.degree_of(a)
        found.add(tuple(coarse[c - 1] for c in sorted(directions)))
    return PointSet.of_points(found, len(list(directions)))


def brute_force_max(points: Sequence[Degree]) -> List[Degree]:
    """Pairwise maximality check on a finite list."""
    unique = set(tuple(p) for p in points)
    return sorted(
        p
        for p in unique
        if not any(q != p and all(x <= y for x, y in zip(p, q)) for q in unique)
    )


def brute_force_dominates(sigma: Sequence[Degree], delta: Sequence[Degree]) -> bool:
    return all(any(all(x <= y for x, y in zip(n, m)) for m in delta) for n in sigma)

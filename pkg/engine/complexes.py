"""
Degreewise Čech and Koszul complexes over the module class.

Every term of both complexes in a fixed fine degree has a basis of labels
(face, summand); each label spans a space of dimension at most one, so a
slice complex is a sequence of small signed 0/1 matrices.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from algebra.modules import GradedModule, Summand
from algebra.monomials import MonomialIdeal, support

Label = Tuple[Tuple[int, ...], int]


def _sign(face: Sequence[int], new: int) -> int:
    return -1 if sum(1 for t in face if t < new) % 2 else 1


def localized_present(summand: Summand, inverted: FrozenSet[int], sat: MonomialIdeal, a: Sequence[int]) -> bool:
    """Whether (S(-a0)/I)[x_F^-1] is nonzero in fine degree a, given sat = sat_F(I)."""
    exps = []
    for k, (x, s) in enumerate(zip(a, summand.shift)):
        if k in inverted:
            exps.append(0)
        elif x < s:
            return False
        else:
            exps.append(x - s)
    return not sat.contains(exps)


class SliceComplex(ABC):
    """A cochain complex of finite-dimensional slices indexed by fine degree."""

    module: GradedModule

    @property
    @abstractmethod
    def length(self) -> int:
        """Largest cohomological index that can be nonzero."""

    @abstractmethod
    def basis(self, k: int, a: Sequence[int]) -> List[Label]:
        """Labels of the degree-a slice of the k-th term."""

    @abstractmethod
    def faces(self, k: int) -> List[Tuple[int, ...]]:
        """Faces indexing the k-th term."""

    @abstractmethod
    def breakpoints(self) -> List[List[int]]:
        """Per fine coordinate, the values at which some slice predicate can change."""

    @property
    def field(self):
        return self.module.grading.field

    def differential(self, k: int, a: Sequence[int]) -> np.ndarray:
        """Matrix of d^k: slice k -> slice k+1 in degree a (rows: targets)."""
        source = self.basis(k, a)
        target = self.basis(k + 1, a)
        matrix = self.field.zeros(len(target), len(source))
        if not source or not target:
            return matrix
        position = {label: i for i, label in enumerate(target)}
        for col, (face, j) in enumerate(source):
            for new in self.extensions(face):
                row = position.get((tuple(sorted(face + (new,))), j))
                if row is not None:
                    matrix[row, col] = _sign(face, new)
        return matrix

    def multiplication(self, k: int, a: Sequence[int], c: Sequence[int]) -> np.ndarray:
        """Matrix of multiplication by x^c from slice (k,a) to slice (k,a+c)."""
        source = self.basis(k, a)
        target = self.basis(k, tuple(x + y for x, y in zip(a, c)))
        matrix = self.field.zeros(len(target), len(source))
        position = {label: i for i, label in enumerate(target)}
        for col, label in enumerate(source):
            row = position.get(label)
            if row is not None:
                matrix[row, col] = 1
        return matrix

    @abstractmethod
    def extensions(self, face: Tuple[int, ...]) -> Sequence[int]:
        """Indices that may be added to a face by the differential."""


@dataclass(frozen=True)
class CechComplex(SliceComplex):
    """Čech complex on the minimal generators of b, computing H^i_b(M)."""

    ideal: MonomialIdeal
    module: GradedModule

    @property
    def generators(self):
        return self.ideal.generators

    @property
    def length(self) -> int:
        return len(self.generators)

    def faces(self, k: int) -> List[Tuple[int, ...]]:
        return list(itertools.combinations(range(len(self.generators)), k))

    def extensions(self, face):
        return [t for t in range(len(self.generators)) if t not in face]

    def face_variables(self, face: Tuple[int, ...]) -> FrozenSet[int]:
        return frozenset().union(*(support(self.generators[t]) for t in face))

    @cached_property
    def _saturations(self) -> Dict[Tuple[FrozenSet[int], int], MonomialIdeal]:
        table = {}
        for k in range(self.length + 1):
            for face in self.faces(k):
                inverted = self.face_variables(face)
                for j, s in enumerate(self.module.summands):
                    if (inverted, j) not in table:
                        table[(inverted, j)] = s.ideal.saturate(inverted)
        return table

    def basis(self, k: int, a: Sequence[int]) -> List[Label]:
        if not 0 <= k <= self.length:
            return []
        labels = []
        for face in self.faces(k):
            inverted = self.face_variables(face)
            for j, s in enumerate(self.module.summands):
                if localized_present(s, inverted, self._saturations[(inverted, j)], a):
                    labels.append((face, j))
        return labels

    def breakpoints(self) -> List[List[int]]:
        points = [{0} for _ in range(self.module.grading.n)]
        for (inverted, j), sat in self._saturations.items():
            shift = self.module.summands[j].shift
            for k in range(self.module.grading.n):
                if k in inverted:
                    continue
                points[k].add(shift[k])
                points[k].update(shift[k] + e for e in sat.breakpoints(k))
        return [sorted(p) for p in points]


@dataclass(frozen=True)
class KoszulComplex(SliceComplex):
    """
    Hom(K(x_V), M[x_U^-1]), computing Ext^i(S/p_V, M) localized at the variables U.

    Its k-th term in degree a is the sum over |T| = k of M[x_U^-1] in degree a + e_T.
    """

    variables: Tuple[int, ...]
    module: GradedModule
    inverted: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def length(self) -> int:
        return len(self.variables)

    def faces(self, k: int) -> List[Tuple[int, ...]]:
        return list(itertools.combinations(self.variables, k))

    def extensions(self, face):
        return [v for v in self.variables if v not in face]

    @cached_property
    def _saturations(self) -> Tuple[MonomialIdeal, ...]:
        return tuple(s.ideal.saturate(self.inverted) for s in self.module.summands)

    def basis(self, k: int, a: Sequence[int]) -> List[Label]:
        if not 0 <= k <= self.length:
            return []
        labels = []
        for face in self.faces(k):
            shifted = list(a)
            for v in face:
                shifted[v] += 1
            for j, s in enumerate(self.module.summands):
                if localized_present(s, self.inverted, self._saturations[j], shifted):
                    labels.append((face, j))
        return labels

    def breakpoints(self) -> List[List[int]]:
        points = [{0} for _ in range(self.module.grading.n)]
        for j, sat in enumerate(self._saturations):
            shift = self.module.summands[j].shift
            for k in range(self.module.grading.n):
                if k in self.inverted:
                    continue
                values = {shift[k]} | {shift[k] + e for e in sat.breakpoints(k)}
                points[k].update(values)
                if k in self.variables:
                    points[k].update(v - 1 for v in values)
        return [sorted(p) for p in points]


def slice_cohomology(C: SliceComplex, a: Sequence[int]) -> Tuple[int, ...]:
    """Dimensions of H^0..H^length of the degree-a slice."""
    a = tuple(a)
    ranks = [C.field.rank(C.differential(k, a)) for k in range(C.length + 1)]
    dims = []
    for k in range(C.length + 1):
        size = len(C.basis(k, a))
        dims.append(size - ranks[k] - (ranks[k - 1] if k else 0))
    return tuple(dims)

"""Grading specification: the bridge between the fine Z^n and the coarse Z^r grading."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

from lattice.degrees import Degree, Projection
from utils.errors import PreconditionError, UnsupportedInstanceError
from utils.linalg import FieldSpec


@dataclass(frozen=True)
class GradingSpec:
    """
    Polynomial ring k[x_1..x_n] with variable j of coarse degree e_{colors[j]}.

    Color 0 marks a degree-zero variable; those only arise from regrading.
    """

    names: Tuple[str, ...]
    colors: Tuple[int, ...]
    rank: int
    field: FieldSpec = field(default_factory=FieldSpec)

    def __post_init__(self):
        if len(self.names) != len(self.colors):
            raise PreconditionError("one color per variable required")
        if len(set(self.names)) != len(self.names):
            raise PreconditionError(f"duplicate variable names in {self.names}")
        if self.rank < 1:
            raise PreconditionError("grading rank must be positive")
        bad = [c for c in self.colors if not 0 <= c <= self.rank]
        if bad:
            raise PreconditionError(f"colors {bad} outside 0..{self.rank}")

    @classmethod
    def of(cls, names: Sequence[str], colors: Sequence[int], rank: int = 0, field: FieldSpec = FieldSpec()):
        return cls(tuple(names), tuple(colors), rank or max(colors, default=1), field)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def is_standard(self) -> bool:
        return all(self.variables_of_color(c) for c in range(1, self.rank + 1))

    def require_standard(self, what: str) -> None:
        if not self.is_standard:
            empty = [c for c in range(1, self.rank + 1) if not self.variables_of_color(c)]
            raise PreconditionError(
                f"{what} needs a standard grading; colors {empty} have no variables"
            )

    def variables_of_color(self, color: int) -> Tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.colors) if c == color)

    def colored_variables(self) -> Tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.colors) if c > 0)

    def degree_of(self, a: Sequence[int]) -> Degree:
        """Coarse degree D*a of a fine degree."""
        if len(a) != self.n:
            raise PreconditionError(f"fine degree of length {len(a)} in a ring with {self.n} variables")
        coarse = [0] * self.rank
        for value, color in zip(a, self.colors):
            if color:
                coarse[color - 1] += value
        return tuple(coarse)

    def coarse_projection(self) -> Projection:
        """D as a projection Z^n -> Z^r."""
        return Projection.coordinate_sum(
            self.n, [[j + 1 for j in self.variables_of_color(c)] for c in range(1, self.rank + 1)]
        )

    def regraded(self, phi: Projection) -> "GradingSpec":
        if phi.source_rank != self.rank:
            raise PreconditionError(
                f"regrading a rank-{self.rank} grading along a map from Z^{phi.source_rank}"
            )
        if not phi.has_unit_columns():
            raise UnsupportedInstanceError(
                "regrading must send every e_i to a unit vector or 0"
            )
        colors = []
        for c in self.colors:
            if c == 0:
                colors.append(0)
                continue
            image = phi.column(c)
            colors.append(image.index(1) + 1 if any(image) else 0)
        return GradingSpec(self.names, tuple(colors), phi.target_rank, self.field)

    def with_field(self, field: FieldSpec) -> "GradingSpec":
        return GradingSpec(self.names, self.colors, self.rank, field)

    def variable_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PreconditionError(f"unknown variable {name!r}") from None

    def format_monomial(self, exponents: Sequence[int]) -> str:
        factors = []
        for name, e in zip(self.names, exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) or "1"

"""Monomials, monomial ideals (staircases) and monomial primes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from utils.errors import PreconditionError

Monomial = Tuple[int, ...]


def divides(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def lcm(u: Sequence[int], v: Sequence[int]) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def support(u: Sequence[int]) -> FrozenSet[int]:
    """0-based indices of the variables dividing u."""
    return frozenset(j for j, e in enumerate(u) if e > 0)


def minimalize(generators: Iterable[Sequence[int]]) -> Tuple[Monomial, ...]:
    """Minimal generators of the ideal generated by the given monomials."""
    gens = sorted({tuple(g) for g in generators}, key=lambda g: (sum(g), g))
    minimal: List[Monomial] = []
    for g in gens:
        if not any(divides(h, g) for h in minimal):
            minimal.append(g)
    return tuple(sorted(minimal))


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal of k[x_1..x_n] given by its minimal monomial generators."""

    nvars: int
    generators: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.nvars:
                raise PreconditionError(f"generator {g} has wrong length for {self.nvars} variables")
            if any(e < 0 for e in g):
                raise PreconditionError(f"negative exponent in generator {g}")
        object.__setattr__(self, "generators", minimalize(self.generators))

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], nvars: int) -> "MonomialIdeal":
        return cls(nvars, tuple(tuple(g) for g in generators))

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    @classmethod
    def of_variables(cls, variables: Iterable[int], nvars: int) -> "MonomialIdeal":
        return cls(
            nvars,
            tuple(tuple(1 if k == j else 0 for k in range(nvars)) for j in variables),
        )

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return (0,) * self.nvars in self.generators

    def contains(self, u: Sequence[int]) -> bool:
        return any(divides(g, u) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.nvars, self.generators + other.generators)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.nvars,
            tuple(lcm(g, h) for g in self.generators for h in other.generators),
        )

    def colon(self, u: Sequence[int]) -> "MonomialIdeal":
        """I : x^u."""
        return MonomialIdeal(
            self.nvars,
            tuple(tuple(max(e - f, 0) for e, f in zip(g, u)) for g in self.generators),
        )

    def saturate(self, variables: Iterable[int]) -> "MonomialIdeal":
        """I : (prod of x_F)^infinity; zeroes the F exponents."""
        inverted = frozenset(variables)
        return MonomialIdeal(
            self.nvars,
            tuple(
                tuple(0 if j in inverted else e for j, e in enumerate(g))
                for g in self.generators
            ),
        )

    def radical(self) -> "MonomialIdeal":
        return MonomialIdeal(
            self.nvars, tuple(tuple(min(e, 1) for e in g) for g in self.generators)
        )

    def variables_in_radical(self) -> FrozenSet[int]:
        """Variables x_j with x_j in the radical."""
        if self.is_unit():
            return frozenset(range(self.nvars))
        return frozenset(
            next(iter(support(g))) for g in self.generators if len(support(g)) == 1
        )

    def max_exponent(self) -> int:
        return max((e for g in self.generators for e in g), default=0)

    def breakpoints(self, k: int) -> FrozenSet[int]:
        """Exponents of x_k occurring in the generators."""
        return frozenset(g[k] for g in self.generators)

    def minimal_primes(self) -> List["MonomialPrime"]:
        """Minimal monomial primes over I: the minimal vertex covers of the generator supports."""
        if self.is_unit():
            return []
        supports = [support(g) for g in self.generators]
        covers: List[FrozenSet[int]] = []
        for size in range(self.nvars + 1):
            for subset in itertools.combinations(range(self.nvars), size):
                chosen = frozenset(subset)
                if any(c <= chosen for c in covers):
                    continue
                if all(s & chosen for s in supports):
                    covers.append(chosen)
        return [MonomialPrime(self.nvars, c) for c in covers]

    def format(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "(0)"
        parts = []
        for g in self.generators:
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, g) if e
            ]
            parts.append("*".join(factors) or "1")
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class MonomialPrime:
    """The prime (x_j : j in variables)."""

    nvars: int
    variables: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "variables", frozenset(self.variables))
        if any(not 0 <= j < self.nvars for j in self.variables):
            raise PreconditionError(f"prime variables {sorted(self.variables)} out of range")

    @property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal.of_variables(sorted(self.variables), self.nvars)

    def contains_ideal(self, b: MonomialIdeal) -> bool:
        return all(support(g) & self.variables for g in b.generators)

    def is_maximal(self) -> bool:
        return len(self.variables) == self.nvars

    def sort_key(self):
        return (len(self.variables), sorted(self.variables))

    def format(self, names: Sequence[str]) -> str:
        if not self.variables:
            return "(0)"
        return "(" + ", ".join(names[j] for j in sorted(self.variables)) + ")"

"""Finite direct sums of shifted cyclic monomial quotients."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from algebra.constructions import monomials_of_degree
from algebra.grading import GradingSpec
from algebra.monomials import MonomialIdeal
from lattice.degrees import Projection, format_degree, scale, support_pattern
from lattice.qdomains import QDomain
from utils.errors import EngineInvariantError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Summand:
    """S(-a0)/I: generator in fine degree ``shift``."""

    shift: Tuple[int, ...]
    ideal: MonomialIdeal

    def present(self, a: Sequence[int]) -> bool:
        diff = tuple(x - y for x, y in zip(a, self.shift))
        return all(e >= 0 for e in diff) and not self.ideal.contains(diff)

    def is_zero(self) -> bool:
        return self.ideal.is_unit()


@dataclass(frozen=True)
class GradedModule:
    grading: GradingSpec
    summands: Tuple[Summand, ...] = ()

    def __post_init__(self):
        for s in self.summands:
            if len(s.shift) != self.grading.n or s.ideal.nvars != self.grading.n:
                raise PreconditionError("summand does not live in the module's ring")

    @classmethod
    def zero(cls, g: GradingSpec) -> "GradedModule":
        return cls(g, ())

    @classmethod
    def free(cls, g: GradingSpec, shift: Sequence[int] = ()) -> "GradedModule":
        return cls.cyclic(g, MonomialIdeal.zero(g.n), shift)

    @classmethod
    def cyclic(cls, g: GradingSpec, ideal: MonomialIdeal, shift: Sequence[int] = ()) -> "GradedModule":
        return cls(g, (Summand(tuple(shift) or (0,) * g.n, ideal),))

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.summands)

    def component_basis(self, a: Sequence[int]) -> List[int]:
        return [j for j, s in enumerate(self.summands) if s.present(a)]

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        if other.grading != self.grading:
            raise PreconditionError("direct sum of modules over different gradings")
        return GradedModule(self.grading, self.summands + other.summands)

    def shifted(self, w: Sequence[int]) -> "GradedModule":
        """M(w) in the fine grading: M(w)_a = M_{a+w}."""
        return GradedModule(
            self.grading,
            tuple(
                Summand(tuple(x - y for x, y in zip(s.shift, w)), s.ideal)
                for s in self.summands
            ),
        )

    def with_grading(self, g: GradingSpec) -> "GradedModule":
        return GradedModule(g, self.summands)

    def annihilator(self) -> MonomialIdeal:
        ann = MonomialIdeal.unit(self.grading.n)
        for s in self.summands:
            ann = ann.intersect(s.ideal)
        return ann

    def generator_degrees(self) -> List[Tuple[int, ...]]:
        return [self.grading.degree_of(s.shift) for s in self.summands if not s.is_zero()]

    def format(self) -> str:
        if not self.summands:
            return "0"
        names = self.grading.names
        return " + ".join(
            f"S(-{format_degree(s.shift)})/{s.ideal.format(names)}" for s in self.summands
        )


def component_basis(M: GradedModule, a: Sequence[int]) -> List[int]:
    return M.component_basis(a)


def regrade(M: GradedModule, phi: Projection) -> GradedModule:
    """M^phi: same module data, degrees pushed through phi."""
    return M.with_grading(M.grading.regraded(phi))


def bounding_shift(M: GradedModule, m: Sequence[int]) -> QDomain:
    """
    X(s,t) with P(t-s) inside P(m) containing the support of M, for M killed by
    a power of R_m: s and w bound the generator degrees, u is the least integer
    with R_{um} M = 0, and t = s + sum over i in P(m) of (w_i - s_i + u m_i) e_i.
    """
    g = M.grading
    g.require_standard("bounding shifts")
    m = tuple(m)
    if len(m) != g.rank or any(v < 0 for v in m) or not any(m):
        raise PreconditionError(f"m must lie in N_0^{g.rank} minus 0, got {m}")
    pm = support_pattern(m)
    degrees = M.generator_degrees()
    if not degrees:
        return QDomain.empty(g.rank, pm)

    ann = M.annihilator()
    rad = ann.radical()
    for mono in monomials_of_degree(g, m):
        if not rad.contains(mono):
            raise PreconditionError(
                f"R_m is not inside the radical of ann(M): {g.format_monomial(mono)} "
                f"of degree {format_degree(m)} acts without nilpotence",
                payload={"witness": g.format_monomial(mono), "degree": list(m)},
            )

    largest_class = max(len(g.variables_of_color(c)) for c in range(1, g.rank + 1))
    limit = max(ann.max_exponent(), 1) * largest_class + 1
    u = next(
        (
            u
            for u in range(1, limit + 1)
            if all(ann.contains(mono) for mono in monomials_of_degree(g, scale(u, m)))
        ),
        None,
    )
    if u is None:
        raise EngineInvariantError(f"no annihilating power of R_m found up to {limit}")

    s = tuple(min(d[i] for d in degrees) for i in range(g.rank))
    w = tuple(max(d[i] for d in degrees) for i in range(g.rank))
    t = tuple(
        s[i] + (w[i] - s[i] + u * m[i] if i + 1 in pm else 0) for i in range(g.rank)
    )
    logger.debug("bounding shift", extra={"u": u, "s": s, "t": t})
    return QDomain(s, t, pm)

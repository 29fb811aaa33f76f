"""
Q-finiteness dimensions g^Q_b(M) and finiteness dimensions f^a_b(M).

g^Q is computed from the coarse supports (is S(H^i) inside some Q-domain?)
and, on standard gradings, again through annihilation by powers of R_m with
P(m) = Q. The two answers must agree.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from algebra.modules import GradedModule
from algebra.monomials import MonomialIdeal
from engine.cohomology import CohomologyEngine
from invariants.ends import q_bound
from lattice.degrees import Pattern, check_pattern, format_pattern
from lattice.qdomains import QDomain, enclosing_qdomain
from lattice.regions import Box, PointSet
from utils.errors import TheoremViolationError

logger = logging.getLogger(__name__)

INFINITY = math.inf
FinDim = Union[int, float]


def format_findim(value: FinDim) -> str:
    return "inf" if value == INFINITY else str(value)


@dataclass(frozen=True)
class GDimResult:
    """g^Q with a Q-domain per index below it and the escaping box at it."""

    q: Pattern
    value: FinDim
    domains: Dict[int, QDomain] = field(default_factory=dict)
    witness: Optional[Box] = None

    def to_json(self) -> dict:
        return {
            "q": sorted(self.q),
            "value": format_findim(self.value),
            "domains": {str(i): d.to_json() for i, d in sorted(self.domains.items())},
            "witness": self.witness.to_json() if self.witness else None,
        }


def _top_index(b: MonomialIdeal) -> int:
    return len(b.generators)


def geometric_gdim(
    b: MonomialIdeal, M: GradedModule, q: Iterable[int], engine: CohomologyEngine
) -> GDimResult:
    q = check_pattern(q, M.grading.rank)
    domains: Dict[int, QDomain] = {}
    for i in range(_top_index(b) + 1):
        support = engine.coarse_support(b, M, i)
        domain, witness = enclosing_qdomain(support, q)
        if domain is None:
            return GDimResult(q, i, domains, witness)
        domains[i] = domain
    return GDimResult(q, INFINITY, domains)


def annihilation_gdim(
    b: MonomialIdeal, M: GradedModule, q: Iterable[int], engine: CohomologyEngine
) -> FinDim:
    """Least i where R_m is not inside sqrt(ann H^i_b(M)), m the indicator of Q."""
    g = M.grading
    q = check_pattern(q, g.rank)
    for i in range(_top_index(b) + 1):
        if not q:
            if not engine.vanishes(b, M, i):
                return i
            continue
        m = tuple(1 if c in q else 0 for c in range(1, g.rank + 1))
        if engine.annihilation_exponent(b, M, i, m) is None:
            return i
    return INFINITY


def finiteness_dimension_g(
    b: MonomialIdeal,
    M: GradedModule,
    q: Iterable[int],
    engine: Optional[CohomologyEngine] = None,
    cross_check: bool = True,
) -> GDimResult:
    engine = engine or CohomologyEngine()
    result = geometric_gdim(b, M, q, engine)
    if cross_check and M.grading.is_standard:
        other = annihilation_gdim(b, M, result.q, engine)
        if other != result.value:
            raise TheoremViolationError(
                f"g^{format_pattern(result.q)}: support route gives "
                f"{format_findim(result.value)}, annihilation route gives {format_findim(other)}",
                payload={"q": sorted(result.q)},
            )
    logger.debug(
        "finiteness dimension",
        extra={"q": sorted(result.q), "value": format_findim(result.value)},
    )
    return result


def finiteness_dimension_f(
    a: MonomialIdeal,
    b: MonomialIdeal,
    M: GradedModule,
    engine: Optional[CohomologyEngine] = None,
) -> FinDim:
    """f^a_b(M) = least i with a not inside sqrt(0 : H^i_b(M)), generator by generator."""
    engine = engine or CohomologyEngine()
    for i in range(_top_index(b) + 1):
        for v in a.generators:
            if engine.monomial_nilpotency(b, M, i, v) is None:
                return i
    return INFINITY


def grade(b: MonomialIdeal, M: GradedModule, engine: Optional[CohomologyEngine] = None) -> FinDim:
    """Least i with H^i_b(M) nonzero."""
    engine = engine or CohomologyEngine()
    return next(
        (i for i in range(_top_index(b) + 1) if not engine.vanishes(b, M, i)), INFINITY
    )


def first_infinite_support(
    b: MonomialIdeal, M: GradedModule, engine: Optional[CohomologyEngine] = None
) -> FinDim:
    """Least i such that H^i_b(M) is not finitely graded."""
    engine = engine or CohomologyEngine()
    for i in range(_top_index(b) + 1):
        if not engine.coarse_support(b, M, i).is_finite():
            return i
    return INFINITY


def all_patterns(rank: int) -> List[Pattern]:
    return [
        frozenset(subset)
        for size in range(rank + 1)
        for subset in itertools.combinations(range(1, rank + 1), size)
    ]


@dataclass
class FinDimReport:
    ideal: str
    module: str
    grade: FinDim
    g: Dict[Pattern, GDimResult]
    f: Dict[str, FinDim]
    bounds: Dict[Pattern, PointSet]
    first_infinite: FinDim

    def rows(self) -> List[Tuple[str, str, str]]:
        """(invariant, argument, value) rows in a fixed order."""
        out = [("grade", "", format_findim(self.grade))]
        for q in sorted(self.g, key=lambda p: (len(p), sorted(p))):
            out.append(("g", format_pattern(q), format_findim(self.g[q].value)))
        for name in sorted(self.f):
            out.append(("f", name, format_findim(self.f[name])))
        for q in sorted(self.bounds, key=lambda p: (len(p), sorted(p))):
            out.append(("bnd", format_pattern(q), str(self.bounds[q])))
        out.append(("not finitely graded from", "", format_findim(self.first_infinite)))
        return out


def finiteness_report(
    b: MonomialIdeal,
    M: GradedModule,
    test_ideals: Mapping[str, MonomialIdeal],
    engine: Optional[CohomologyEngine] = None,
) -> FinDimReport:
    engine = engine or CohomologyEngine()
    g = M.grading
    gdims = {q: finiteness_dimension_g(b, M, q, engine) for q in all_patterns(g.rank)}
    fdims = {name: finiteness_dimension_f(a, b, M, engine) for name, a in test_ideals.items()}
    bounds = {}
    if g.is_standard:
        bounds = {q: q_bound(M, q, engine) for q in all_patterns(g.rank) if q}
    return FinDimReport(
        ideal=b.format(g.names),
        module=M.format(),
        grade=grade(b, M, engine),
        g=gdims,
        f=fdims,
        bounds=bounds,
        first_infinite=first_infinite_support(b, M, engine),
    )

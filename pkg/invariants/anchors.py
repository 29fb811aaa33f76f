"""
Anchor points and Bass numbers.

After regrading along phi(p) every colored variable lies in p and every
variable outside p has degree zero, so localizing at p only inverts the
variables outside p. Ext^i(S/p, M) localized there is the cohomology of a
Koszul complex on the variables of p with the others inverted; its nonzero
cells, pushed to coarse degrees, are the anchor points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from algebra.constructions import directions
from algebra.modules import GradedModule, regrade
from algebra.monomials import MonomialPrime
from engine.cells import RegionSet
from engine.cohomology import CohomologyEngine
from engine.complexes import KoszulComplex
from lattice.degrees import Pattern, direction_projection, format_pattern
from lattice.regions import PointSet
from utils.errors import EngineInvariantError, UndefinedInvariantError, UnsupportedInstanceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnchorSet:
    prime: MonomialPrime
    level: int
    directions: Pattern
    points: PointSet

    def is_empty(self) -> bool:
        return self.points.is_empty()

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "directions": sorted(self.directions),
            "points": self.points.to_json(),
        }


def localized_ext_complex(p: MonomialPrime, M: GradedModule) -> KoszulComplex:
    """Hom(K(x_p), M) with every variable outside p inverted."""
    outside = frozenset(k for k in range(M.grading.n) if k not in p.variables)
    return KoszulComplex(tuple(sorted(p.variables)), M, outside)


def anchor_region(
    p: MonomialPrime, M: GradedModule, i: int, engine: Optional[CohomologyEngine] = None
) -> RegionSet:
    """Fine support of Ext^i(S/p, M) localized at p."""
    engine = engine or CohomologyEngine()
    return engine.support_of(localized_ext_complex(p, M), i)


def _project_region(region: RegionSet, M: GradedModule, dirs: Pattern) -> PointSet:
    g = M.grading
    phi = direction_projection(g.rank, dirs)
    projected = region.as_pointset().image(g.coarse_projection().then(phi))
    if not projected.is_finite():
        raise EngineInvariantError(
            "localized Ext has an unbounded direction coordinate",
            payload={"region": projected.to_json()},
        )
    return projected.normalized()


def anchor_points(
    p: MonomialPrime, M: GradedModule, i: int, engine: Optional[CohomologyEngine] = None
) -> AnchorSet:
    """anch^i(p, M) in Z^{#dir(p)}."""
    g = M.grading
    g.require_standard("anchor points")
    dirs = directions(p.ideal, g)
    if not dirs:
        raise UndefinedInvariantError(
            f"p = {p.format(g.names)} does not contain R_1; anchor points are undefined",
            payload={"prime": p.format(g.names)},
        )
    region = anchor_region(p, M, i, engine)
    points = _project_region(region, M, dirs)
    logger.debug(
        "anchor points",
        extra={"prime": p.format(g.names), "level": i, "count": len(points.boxes)},
    )
    return AnchorSet(p, i, dirs, points)


def regraded_anchor_points(
    p: MonomialPrime, M: GradedModule, i: int, engine: Optional[CohomologyEngine] = None
) -> AnchorSet:
    """anch^i(p^phi, M^phi) for phi = phi(p), where every color is a direction."""
    g = M.grading
    g.require_standard("anchor points")
    dirs = directions(p.ideal, g)
    if not dirs:
        raise UndefinedInvariantError(
            f"p = {p.format(g.names)} does not contain R_1; anchor points are undefined"
        )
    Mphi = regrade(M, direction_projection(g.rank, dirs))
    inner = anchor_points(p, Mphi, i, engine)
    if inner.directions != frozenset(range(1, Mphi.grading.rank + 1)):
        raise EngineInvariantError(
            f"regraded prime has directions {format_pattern(inner.directions)}, expected all"
        )
    return AnchorSet(p, i, dirs, inner.points)


def all_anchor_points(
    p: MonomialPrime, M: GradedModule, engine: Optional[CohomologyEngine] = None
) -> PointSet:
    """anch(p, M): the union over every level."""
    engine = engine or CohomologyEngine()
    total = None
    for i in range(len(p.variables) + 1):
        level = anchor_points(p, M, i, engine).points
        total = level if total is None else total.union(level)
    return total


def bass_number(
    p: MonomialPrime, M: GradedModule, i: int, engine: Optional[CohomologyEngine] = None
) -> int:
    """mu^i(p, M) for the *maximal prime of a ring with R_0 = k."""
    g = M.grading
    g.require_standard("Bass numbers")
    if g.variables_of_color(0):
        raise UnsupportedInstanceError("Bass numbers need R_0 = k; the ring has degree-zero variables")
    if not p.is_maximal() or directions(p.ideal, g) != frozenset(range(1, g.rank + 1)):
        raise UnsupportedInstanceError(
            f"Bass numbers are only computed for the *maximal prime, got {p.format(g.names)}"
        )
    total = 0
    for cell in anchor_region(p, M, i, engine).cells:
        if not cell.box.is_finite():
            raise EngineInvariantError(f"Ext^{i}(k, M) has an unbounded cell {cell.box}")
        total += len(list(cell.box.points())) * cell.payload
    return total

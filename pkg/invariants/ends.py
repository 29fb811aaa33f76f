"""Ends of local cohomology modules, Q-bounds and the a*-invariant."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from algebra.constructions import directions, ideal_cQ, ideal_Rplus
from algebra.modules import GradedModule, regrade
from algebra.monomials import MonomialIdeal
from engine.cohomology import CohomologyEngine
from lattice.degrees import Pattern, Projection, check_pattern, direction_projection
from lattice.order import maximal_elements
from lattice.regions import PointSet
from utils.errors import EngineInvariantError, UndefinedInvariantError

logger = logging.getLogger(__name__)

END_UNDEFINED = (
    "the end is undefined when dir(b) is empty: we have not defined the end "
    "of H^i_b(M) when b does not contain R_1 of any color up to radical"
)


@dataclass(frozen=True)
class EndSet:
    ideal: MonomialIdeal
    index: int
    directions: Pattern
    points: PointSet

    def is_empty(self) -> bool:
        return self.points.is_empty()

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "directions": sorted(self.directions),
            "points": self.points.to_json(),
        }


def projected_support(
    b: MonomialIdeal, M: GradedModule, j: int, engine: Optional[CohomologyEngine] = None
) -> PointSet:
    """phi(b) applied to the coarse support of H^j_b(M)."""
    engine = engine or CohomologyEngine()
    g = M.grading
    dirs = directions(b, g)
    if not dirs:
        raise UndefinedInvariantError(END_UNDEFINED, payload={"ideal": b.format(g.names)})
    projected = engine.coarse_support(b, M, j).image(direction_projection(g.rank, dirs))
    for box in projected.boxes:
        if not box.bounded_above():
            raise EngineInvariantError(
                f"H^{j}_b(M) is unbounded above along a direction: {box}",
                payload={"ideal": b.format(g.names), "index": j},
            )
    return projected


def end_of(
    b: MonomialIdeal, M: GradedModule, j: int, engine: Optional[CohomologyEngine] = None
) -> EndSet:
    """end(H^j_b(M)): maximal direction-projected supporting degrees."""
    g = M.grading
    g.require_standard("ends")
    projected = projected_support(b, M, j, engine)
    return EndSet(b, j, directions(b, g), maximal_elements(projected))


def ends_upto(
    b: MonomialIdeal, M: GradedModule, j: int, engine: Optional[CohomologyEngine] = None
) -> PointSet:
    """max of the union of end(H^i_b(M)) over i <= j."""
    engine = engine or CohomologyEngine()
    return max_of_union(end_of(b, M, i, engine).points for i in range(j + 1))


def max_of_union(sets: Iterable[PointSet]) -> PointSet:
    sets = list(sets)
    if not sets:
        raise EngineInvariantError("max of an empty family of point sets")
    total = sets[0]
    for s in sets[1:]:
        total = total.union(s)
    return maximal_elements(total)


def q_bound(
    M: GradedModule, q: Iterable[int], engine: Optional[CohomologyEngine] = None
) -> PointSet:
    """bnd^Q(M): max of the ends of every H^i_{c^Q}(M)."""
    g = M.grading
    g.require_standard("Q-bounds")
    q = check_pattern(q, g.rank)
    if not q:
        raise UndefinedInvariantError("the Q-bound needs a nonempty Q")
    c = ideal_cQ(g, q)
    return ends_upto(c, M, len(c.generators), engine)


def a_star(
    M: GradedModule, color: int, engine: Optional[CohomologyEngine] = None
) -> Optional[int]:
    """
    a*(M^phi_i) for phi_i the color-th coordinate function; None stands for
    -infinity, when every H^k_{R_+}(M^phi_i) vanishes.
    """
    g = M.grading
    g.require_standard("a*-invariants")
    check_pattern([color], g.rank)
    Mi = regrade(M, Projection.coordinate(g.rank, [color]))
    rplus = ideal_Rplus(Mi.grading)
    top = ends_upto(rplus, Mi, len(rplus.generators), engine)
    if top.is_empty():
        return None
    return max(point[0] for point in top.points())

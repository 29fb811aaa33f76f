"""
Supports of H^i_{R_+}(A # B) for a Segre-type product of two positively
graded domains, given only the 1-dimensional supports of H^j_{A_+}(A) and
H^l_{B_+}(B):

    S(H^i) = (S(A) x S_B^i) u (S_A^i x S(B)) u U_{j+l=i+1, j,l>=2} S_A^j x S_B^l
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Tuple

from invariants.finiteness import INFINITY, FinDim, all_patterns
from lattice.degrees import Pattern
from lattice.qdomains import enclosing_qdomain
from lattice.regions import Box, PointSet

Supports = Mapping[int, PointSet]

NONNEGATIVE = PointSet(1, (Box((0,), (None,)),))
NEGATIVE = PointSet(1, (Box((None,), (-1,)),))


def product(first: PointSet, second: PointSet) -> PointSet:
    """Cartesian product of two point sets, box by box."""
    return PointSet(
        first.rank + second.rank,
        tuple(
            Box(a.lo + b.lo, a.hi + b.hi) for a in first.boxes for b in second.boxes
        ),
    )


def _at(supports: Supports, i: int) -> PointSet:
    return supports.get(i, PointSet.empty(1))


def kunneth_support(
    supp_a: Supports, supp_b: Supports, base_a: PointSet, base_b: PointSet, i: int
) -> PointSet:
    pieces = [
        product(base_a, _at(supp_b, i)),
        product(_at(supp_a, i), base_b),
    ]
    for j in range(2, i):
        pieces.append(product(_at(supp_a, j), _at(supp_b, i + 1 - j)))
    total = PointSet.empty(2)
    for piece in pieces:
        total = total.union(piece)
    return total


def top_index(supp_a: Supports, supp_b: Supports) -> int:
    """Largest i at which the product support can be nonempty."""
    last_a = max((j for j, s in supp_a.items() if not s.is_empty()), default=0)
    last_b = max((j for j, s in supp_b.items() if not s.is_empty()), default=0)
    return max(last_a + last_b - 1, last_a, last_b)


def example_supports(
    w: int = 5, v: int = 5, W: Iterable[int] = (2,), V: Iterable[int] = (3,)
) -> Tuple[Dict[int, PointSet], Dict[int, PointSet]]:
    """
    H^i_{A_+}(A) is k in degree 0 for i in W and lives in degrees < 0 for
    i = w = dim A; the same for B with V and v.
    """

    def build(top: int, middle: Iterable[int]) -> Dict[int, PointSet]:
        supports = {i: PointSet.of_points([(0,)], 1) for i in middle}
        supports[top] = NEGATIVE
        return supports

    return build(w, W), build(v, V)


def kunneth_supports(
    supp_a: Supports, supp_b: Supports, base_a: PointSet = NONNEGATIVE, base_b: PointSet = NONNEGATIVE
) -> Dict[int, PointSet]:
    return {
        i: kunneth_support(supp_a, supp_b, base_a, base_b, i)
        for i in range(top_index(supp_a, supp_b) + 1)
    }


def kunneth_gdim(
    supp_a: Supports,
    supp_b: Supports,
    q: Iterable[int],
    base_a: PointSet = NONNEGATIVE,
    base_b: PointSet = NONNEGATIVE,
) -> FinDim:
    """g^Q computed directly on the product supports."""
    q = frozenset(q)
    for i, support in sorted(kunneth_supports(supp_a, supp_b, base_a, base_b).items()):
        domain, _ = enclosing_qdomain(support, q)
        if domain is None:
            return i
    return INFINITY


def kunneth_gdims(supp_a: Supports, supp_b: Supports) -> List[Tuple[Pattern, FinDim]]:
    return [(q, kunneth_gdim(supp_a, supp_b, q)) for q in all_patterns(2)]

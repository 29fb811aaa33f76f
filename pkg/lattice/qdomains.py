"""Q-domains X(s,t): degrees with some coordinate i in the window s_i <= n_i < t_i."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from lattice.degrees import (
    Degree,
    Pattern,
    check_pattern,
    format_degree,
    format_pattern,
    support_pattern,
    sub,
)
from lattice.regions import Box, PointSet
from utils.errors import PreconditionError


@dataclass(frozen=True)
class QDomain:
    s: Degree
    t: Degree
    q: Pattern

    def __post_init__(self):
        if len(self.s) != len(self.t):
            raise PreconditionError("Q-domain corners of different ranks")
        check_pattern(self.q, len(self.s))
        diff = sub(self.t, self.s)
        if any(d < 0 for d in diff):
            raise PreconditionError(f"Q-domain needs s <= t, got {self.s}, {self.t}")
        if not support_pattern(diff) <= self.q:
            raise PreconditionError(
                f"P(t-s) = {format_pattern(support_pattern(diff))} not inside "
                f"Q = {format_pattern(self.q)}"
            )

    @classmethod
    def empty(cls, rank: int, q: Iterable[int] = ()) -> "QDomain":
        return cls((0,) * rank, (0,) * rank, frozenset(q))

    @property
    def rank(self) -> int:
        return len(self.s)

    @property
    def pattern(self) -> Pattern:
        return support_pattern(sub(self.t, self.s))

    def contains(self, n: Sequence[int]) -> bool:
        if len(n) != self.rank:
            raise PreconditionError("rank mismatch in Q-domain membership")
        return any(s <= x < t for s, t, x in zip(self.s, self.t, n))

    def is_empty(self) -> bool:
        return self.s == self.t

    def translate(self, w: Sequence[int]) -> "QDomain":
        return QDomain(
            tuple(a + b for a, b in zip(self.s, w)),
            tuple(a + b for a, b in zip(self.t, w)),
            self.q,
        )

    def to_json(self) -> dict:
        return {"s": list(self.s), "t": list(self.t), "q": sorted(self.q)}

    def __str__(self) -> str:
        return f"X({format_degree(self.s)},{format_degree(self.t)})"


def qdomain_contains(x: QDomain, n: Sequence[int]) -> bool:
    return x.contains(n)


def qdomain_cover(
    xs: Sequence[QDomain], q: Iterable[int], rank: Optional[int] = None
) -> QDomain:
    """A single Q-domain containing every input: min of the s, max of the t on Q."""
    q = frozenset(q)
    if not xs:
        if rank is None:
            raise PreconditionError("cover of no domains needs an explicit rank")
        return QDomain.empty(rank, q)
    rank = xs[0].rank
    for x in xs:
        if x.rank != rank:
            raise PreconditionError("cover of Q-domains of different ranks")
        if not x.pattern <= q:
            raise PreconditionError(
                f"{x} has pattern {format_pattern(x.pattern)} outside {format_pattern(q)}"
            )
    s = tuple(min(x.s[i] for x in xs) for i in range(rank))
    t = tuple(
        max(x.t[i] for x in xs) if i + 1 in q else s[i] for i in range(rank)
    )
    return QDomain(s, t, q)


def escape_multiplier(x: QDomain, m: Sequence[int]) -> int:
    """
    Least u >= 1 with u*m >= t-s on P(m).

    For every w some j in 0..#P(m) then has w + j*u*m outside x.
    """
    if len(m) != x.rank:
        raise PreconditionError("rank mismatch between domain and multiplier")
    if any(v < 0 for v in m) or not any(m):
        raise PreconditionError(f"multiplier degree must lie in N_0^r minus 0, got {tuple(m)}")
    pm = support_pattern(m)
    if not x.pattern <= pm:
        raise PreconditionError(
            f"{x} has pattern {format_pattern(x.pattern)} outside P(m) = {format_pattern(pm)}"
        )
    u = 1
    for i in pm:
        width = x.t[i - 1] - x.s[i - 1]
        u = max(u, -(-width // m[i - 1]))
    return u


def enclosing_qdomain(
    region: PointSet, q: Iterable[int]
) -> Tuple[Optional[QDomain], Optional[Box]]:
    """
    Decide whether a box union lies in some Q-domain.

    A box fits iff one of its Q-coordinates is bounded on both sides; the
    domain then spans the hull of the chosen intervals. Returns the domain, or
    None with the first box that fits in no Q-domain.
    """
    q = check_pattern(q, region.rank)
    hull: Dict[int, Tuple[int, int]] = {}
    for box in region.boxes:
        chosen = next(
            (
                i
                for i in sorted(q)
                if box.lo[i - 1] is not None and box.hi[i - 1] is not None
            ),
            None,
        )
        if chosen is None:
            return None, box
        lo, hi = box.lo[chosen - 1], box.hi[chosen - 1]
        if chosen in hull:
            old_lo, old_hi = hull[chosen]
            lo, hi = min(lo, old_lo), max(hi, old_hi)
        hull[chosen] = (lo, hi)
    s = tuple(hull[i][0] if i in hull else 0 for i in range(1, region.rank + 1))
    t = tuple(hull[i][1] + 1 if i in hull else 0 for i in range(1, region.rank + 1))
    return QDomain(s, t, q), None

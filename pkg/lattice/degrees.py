"""
Coarse degree vectors, support patterns and projections of Z^r.

Degrees are plain integer tuples. Coordinates are addressed 1-based wherever
they name colors (support patterns, kept indices), matching the color labels
used by gradings and instance files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from utils.errors import PreconditionError

Degree = Tuple[int, ...]
Pattern = FrozenSet[int]


def zero(rank: int) -> Degree:
    return (0,) * rank


def ones(rank: int) -> Degree:
    return (1,) * rank


def unit(rank: int, i: int) -> Degree:
    """e_i for a 1-based index i."""
    if not 1 <= i <= rank:
        raise PreconditionError(f"unit index {i} outside 1..{rank}")
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def add(a: Sequence[int], b: Sequence[int]) -> Degree:
    _check_ranks(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Degree:
    _check_ranks(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(u: int, a: Sequence[int]) -> Degree:
    return tuple(u * x for x in a)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise order n <= m."""
    _check_ranks(a, b)
    return all(x <= y for x, y in zip(a, b))


def support_pattern(n: Sequence[int]) -> Pattern:
    """P(n): the 1-based coordinates where n is nonzero."""
    return frozenset(i + 1 for i, x in enumerate(n) if x != 0)


def check_pattern(q: Iterable[int], rank: int) -> Pattern:
    pattern = frozenset(q)
    bad = sorted(i for i in pattern if not 1 <= i <= rank)
    if bad:
        raise PreconditionError(f"pattern indices {bad} outside 1..{rank}")
    return pattern


def format_degree(n: Sequence[int]) -> str:
    if len(n) == 1:
        return str(n[0])
    return "(" + ",".join(str(x) for x in n) + ")"


def format_pattern(q: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(q)) + "}"


def _check_ranks(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise PreconditionError(f"rank mismatch: {len(a)} vs {len(b)}")


@dataclass(frozen=True)
class Projection:
    """
    A homomorphism Z^r -> Z^m.

    Coordinate projections keep the (1-based, increasing) ``kept`` indices;
    general homomorphisms carry a nonnegative integer ``matrix`` with one row
    per target coordinate.
    """

    source_rank: int
    kept: Optional[Tuple[int, ...]] = None
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if (self.kept is None) == (self.matrix is None):
            raise PreconditionError("projection needs exactly one of kept/matrix")
        if self.kept is not None:
            if any(b <= a for a, b in zip(self.kept, self.kept[1:])):
                raise PreconditionError(f"kept indices {self.kept} not increasing")
            check_pattern(self.kept, self.source_rank)
        else:
            for row in self.matrix:
                if len(row) != self.source_rank:
                    raise PreconditionError("matrix row length differs from source rank")
                if any(v < 0 for v in row):
                    raise PreconditionError("projection matrices must be nonnegative")

    @classmethod
    def identity(cls, rank: int) -> "Projection":
        return cls(rank, kept=tuple(range(1, rank + 1)))

    @classmethod
    def coordinate(cls, source_rank: int, kept: Iterable[int]) -> "Projection":
        return cls(source_rank, kept=tuple(sorted(kept)))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "Projection":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if not rows:
            raise PreconditionError("matrix projection needs at least one row")
        return cls(len(rows[0]), matrix=rows)

    @classmethod
    def coordinate_sum(
        cls, source_rank: int, groups: Sequence[Iterable[int]]
    ) -> "Projection":
        """Target coordinate j is the sum of the source coordinates in groups[j]."""
        rows = []
        for group in groups:
            members = check_pattern(group, source_rank)
            rows.append(tuple(1 if i + 1 in members else 0 for i in range(source_rank)))
        return cls(source_rank, matrix=tuple(rows))

    @property
    def target_rank(self) -> int:
        if self.kept is not None:
            return len(self.kept)
        return len(self.matrix)

    def as_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        if self.matrix is not None:
            return self.matrix
        return tuple(
            tuple(1 if k == i - 1 else 0 for k in range(self.source_rank))
            for i in self.kept
        )

    def apply(self, n: Sequence[int]) -> Degree:
        if len(n) != self.source_rank:
            raise PreconditionError(
                f"degree of rank {len(n)} given to projection from Z^{self.source_rank}"
            )
        if self.kept is not None:
            return tuple(n[i - 1] for i in self.kept)
        return tuple(sum(c * x for c, x in zip(row, n)) for row in self.matrix)

    def column(self, i: int) -> Degree:
        """Image of e_i (1-based)."""
        return self.apply(unit(self.source_rank, i))

    def has_unit_columns(self) -> bool:
        """True iff every e_i maps to a unit vector or to 0."""
        for i in range(1, self.source_rank + 1):
            col = self.column(i)
            if sum(col) > 1 or any(v not in (0, 1) for v in col):
                return False
        return True

    def then(self, other: "Projection") -> "Projection":
        """The composite other after self."""
        if other.source_rank != self.target_rank:
            raise PreconditionError(
                f"cannot compose Z^{self.source_rank}->Z^{self.target_rank} "
                f"with a map from Z^{other.source_rank}"
            )
        if self.kept is not None and other.kept is not None:
            return Projection(self.source_rank, kept=tuple(self.kept[i - 1] for i in other.kept))
        left, right = other.as_matrix(), self.as_matrix()
        rows = tuple(
            tuple(
                sum(left[j][k] * right[k][c] for k in range(self.target_rank))
                for c in range(self.source_rank)
            )
            for j in range(other.target_rank)
        )
        return Projection(self.source_rank, matrix=rows)


def project(phi: Projection, n: Sequence[int]) -> Degree:
    return phi.apply(n)


def direction_projection(rank: int, directions: Iterable[int]) -> Projection:
    """phi(b): forget the coordinates outside the direction set."""
    return Projection.coordinate(rank, check_pattern(directions, rank))


def relative_projection(outer: Iterable[int], inner: Iterable[int]) -> Projection:
    """phi(p;b): Z^{#dir(p)} -> Z^{#dir(b)}, defined when dir(b) is inside dir(p)."""
    outer_sorted = sorted(outer)
    inner_set = frozenset(inner)
    if not inner_set <= set(outer_sorted):
        raise PreconditionError(
            f"direction set {format_pattern(inner_set)} is not contained in "
            f"{format_pattern(outer_sorted)}"
        )
    positions = tuple(k + 1 for k, c in enumerate(outer_sorted) if c in inner_set)
    return Projection(len(outer_sorted), kept=positions)


def compose_projection(first: Projection, second: Projection) -> Projection:
    return first.then(second)

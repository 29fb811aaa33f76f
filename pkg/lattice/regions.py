"""Axis-aligned lattice boxes (possibly unbounded) and point sets built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from lattice.degrees import Degree, Projection, format_degree
from utils.errors import PreconditionError

Bound = Optional[int]


def _fmt_interval(lo: Bound, hi: Bound) -> str:
    if lo is not None and lo == hi:
        return f"{{{lo}}}"
    left = "(-inf" if lo is None else f"[{lo}"
    right = "inf)" if hi is None else f"{hi}]"
    return f"{left},{right}"


@dataclass(frozen=True)
class Box:
    """Product of integer intervals; ``None`` marks an infinite end."""

    lo: Tuple[Bound, ...]
    hi: Tuple[Bound, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise PreconditionError("box bounds of different ranks")

    @classmethod
    def point(cls, n: Sequence[int]) -> "Box":
        return cls(tuple(n), tuple(n))

    @classmethod
    def whole(cls, rank: int) -> "Box":
        return cls((None,) * rank, (None,) * rank)

    @property
    def rank(self) -> int:
        return len(self.lo)

    def interval(self, k: int) -> Tuple[Bound, Bound]:
        return self.lo[k], self.hi[k]

    def is_empty(self) -> bool:
        return any(
            lo is not None and hi is not None and lo > hi
            for lo, hi in zip(self.lo, self.hi)
        )

    def is_finite(self) -> bool:
        return all(v is not None for v in self.lo + self.hi)

    def bounded_above(self) -> bool:
        return all(v is not None for v in self.hi)

    def contains(self, n: Sequence[int]) -> bool:
        return all(
            (lo is None or lo <= x) and (hi is None or x <= hi)
            for lo, hi, x in zip(self.lo, self.hi, n)
        )

    def intersect(self, other: "Box") -> "Box":
        lo = tuple(_max_bound(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(_min_bound(a, b) for a, b in zip(self.hi, other.hi))
        return Box(lo, hi)

    def clip(self, lo: Sequence[int], hi: Sequence[int]) -> "Box":
        return self.intersect(Box(tuple(lo), tuple(hi)))

    def points(self) -> Iterator[Degree]:
        if not self.is_finite():
            raise PreconditionError(f"cannot enumerate unbounded box {self}")
        if self.is_empty():
            return iter(())
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lo, self.hi)]
        return (tuple(p) for p in itertools.product(*ranges))

    def image(self, phi: Projection) -> "Box":
        """Image under a projection whose columns are unit vectors or zero."""
        if not phi.has_unit_columns():
            raise PreconditionError("box images need unit-or-zero projection columns")
        rows = phi.as_matrix()
        lo, hi = [], []
        for row in rows:
            members = [k for k, c in enumerate(row) if c]
            lo.append(_sum_bounds(self.lo[k] for k in members))
            hi.append(_sum_bounds(self.hi[k] for k in members))
        return Box(tuple(lo), tuple(hi))

    def to_json(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi)}

    def __str__(self) -> str:
        return " x ".join(_fmt_interval(lo, hi) for lo, hi in zip(self.lo, self.hi))


def _max_bound(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_bound(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _sum_bounds(values: Iterable[Bound]) -> Bound:
    total = 0
    for v in values:
        if v is None:
            return None
        total += v
    return total


def _box_key(box: Box):
    def key(v: Bound, low: bool):
        if v is None:
            return (0, 0) if low else (2, 0)
        return (1, v)

    return (
        tuple(key(v, True) for v in box.lo),
        tuple(key(v, False) for v in box.hi),
    )


@dataclass(frozen=True)
class PointSet:
    """
    A subset of Z^rank given as a union of boxes.

    Finite sets are stored as degenerate single-point boxes, deduplicated and
    sorted lexicographically; region unions keep their boxes in sorted order.
    """

    rank: int
    boxes: Tuple[Box, ...] = field(default=())

    def __post_init__(self):
        kept = [b for b in self.boxes if not b.is_empty()]
        for b in kept:
            if b.rank != self.rank:
                raise PreconditionError(f"box of rank {b.rank} in a rank-{self.rank} set")
        unique = sorted(set(kept), key=_box_key)
        object.__setattr__(self, "boxes", tuple(unique))

    @classmethod
    def empty(cls, rank: int) -> "PointSet":
        return cls(rank, ())

    @classmethod
    def of_points(cls, points: Iterable[Sequence[int]], rank: int) -> "PointSet":
        return cls(rank, tuple(Box.point(tuple(p)) for p in points))

    @classmethod
    def of_boxes(cls, boxes: Iterable[Box], rank: int) -> "PointSet":
        return cls(rank, tuple(boxes))

    def is_empty(self) -> bool:
        return not self.boxes

    def is_finite(self) -> bool:
        return all(b.is_finite() for b in self.boxes)

    def is_point_list(self) -> bool:
        return all(b.lo == b.hi for b in self.boxes)

    def contains(self, n: Sequence[int]) -> bool:
        return any(b.contains(n) for b in self.boxes)

    def points(self) -> List[Degree]:
        """All members, sorted lexicographically; the set must be finite."""
        found = set()
        for b in self.boxes:
            found.update(b.points())
        return sorted(found)

    def points_in(self, lo: Sequence[int], hi: Sequence[int]) -> List[Degree]:
        found = set()
        for b in self.boxes:
            found.update(b.clip(lo, hi).points())
        return sorted(found)

    def union(self, other: "PointSet") -> "PointSet":
        if other.rank != self.rank:
            raise PreconditionError("union of point sets of different ranks")
        return PointSet(self.rank, self.boxes + other.boxes)

    def image(self, phi: Projection) -> "PointSet":
        return PointSet(phi.target_rank, tuple(b.image(phi) for b in self.boxes))

    def normalized(self) -> "PointSet":
        """Finite sets become sorted point lists; regions are returned unchanged."""
        if self.is_finite() and not self.is_point_list():
            return PointSet.of_points(self.points(), self.rank)
        return self

    def to_json(self):
        if self.is_point_list():
            return [list(b.lo) for b in self.boxes]
        return [b.to_json() for b in self.boxes]

    def __str__(self) -> str:
        if not self.boxes:
            return "{}"
        if self.is_point_list():
            return "{" + ", ".join(format_degree(b.lo) for b in self.boxes) + "}"
        return " U ".join(str(b) for b in self.boxes)

"""Maximal elements and domination for box-union point sets."""

from __future__ import annotations

from lattice.regions import Box, PointSet


def _exceeds(box: Box, corner) -> bool:
    """True iff box has a point m >= corner with m != corner."""
    above = box.intersect(Box(tuple(corner), (None,) * len(corner)))
    if above.is_empty():
        return False
    return any(hi is None or hi > c for hi, c in zip(above.hi, corner))


def maximal_elements(sigma: PointSet) -> PointSet:
    """
    The <=-maximal members of sigma.

    A maximal member is necessarily the upper corner of a box that is bounded
    above; such a corner is kept unless some box reaches strictly above it.
    """
    candidates = {b.hi for b in sigma.boxes if b.bounded_above()}
    maxima = [
        c for c in candidates if not any(_exceeds(b, c) for b in sigma.boxes)
    ]
    return PointSet.of_points(maxima, sigma.rank)


def _covers(upper, corner) -> bool:
    return all(u is None or (c is not None and c <= u) for u, c in zip(upper, corner))


def dominates(sigma: PointSet, delta: PointSet) -> bool:
    """
    Sigma is dominated by delta: every n in sigma has m in delta with n <= m.

    The down-closure of delta is the union of the orthants below its boxes'
    upper corners, so a box of sigma is dominated iff a single delta box has an
    upper corner (with infinite ends) above the sigma box's upper corner.
    """
    return all(
        any(_covers(d.hi, b.hi) for d in delta.boxes) for b in sigma.boxes
    )

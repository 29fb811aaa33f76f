import itertools
import random

import pytest

from lattice.degrees import (
    Projection,
    add,
    direction_projection,
    format_pattern,
    leq,
    relative_projection,
    support_pattern,
    unit,
)
from lattice.order import dominates, maximal_elements
from lattice.qdomains import (
    QDomain,
    enclosing_qdomain,
    escape_multiplier,
    qdomain_contains,
    qdomain_cover,
)
from lattice.regions import Box, PointSet
from oracle.windowed import brute_force_dominates, brute_force_max
from utils.errors import PreconditionError

pytestmark = pytest.mark.unit


def test_unit_and_support_pattern():
    """Unit vectors are 1-based and P(n) lists the nonzero coordinates"""
    assert unit(3, 2) == (0, 1, 0)
    assert support_pattern((0, -2, 5)) == frozenset({2, 3})
    assert support_pattern((0, 0)) == frozenset()
    with pytest.raises(PreconditionError):
        unit(2, 3)


def test_componentwise_order():
    """leq compares every coordinate and rejects rank mismatches"""
    assert leq((1, -2), (1, 0))
    assert not leq((2, 0), (1, 5))
    with pytest.raises(PreconditionError):
        leq((1,), (1, 2))
    assert add((1, 2), (3, -4)) == (4, -2)


def test_coordinate_sum_projection():
    """sigma(n) = (n1, n2 + n3) sends unit vectors to unit vectors"""
    sigma = Projection.coordinate_sum(3, [[1], [2, 3]])
    assert sigma.apply((4, 5, -1)) == (4, 4)
    assert sigma.has_unit_columns()
    assert not Projection.from_matrix([[2, 0]]).has_unit_columns()


def test_projection_composition():
    """phi(p;b) after phi(p) equals phi(b)"""
    outer = direction_projection(3, [1, 3])
    inner = relative_projection([1, 3], [3])
    composite = outer.then(inner)
    assert composite.apply((7, 8, 9)) == (9,)
    assert composite.apply((7, 8, 9)) == direction_projection(3, [3]).apply((7, 8, 9))


def test_relative_projection_requires_nested_directions():
    """dir(b) must lie inside dir(p)"""
    with pytest.raises(PreconditionError):
        relative_projection([1], [2])


def test_box_image_sums_bounds():
    """The image of a box adds the bounds of the merged coordinates"""
    box = Box((0, None, 1), (2, -1, 1))
    image = box.image(Projection.coordinate_sum(3, [[1, 3], [2]]))
    assert image == Box((1, None), (3, -1))


def test_point_set_normalizes_finite_boxes():
    """Finite box unions become sorted point lists"""
    sigma = PointSet.of_boxes([Box((0, 0), (1, 0)), Box.point((0, 0))], 2).normalized()
    assert sigma.to_json() == [[0, 0], [1, 0]]
    assert str(sigma) == "{(0,0), (1,0)}"


def test_maximal_elements_of_points():
    """max keeps exactly the undominated points"""
    sigma = PointSet.of_points([(0, 0), (1, -1), (-1, 1), (0, -3)], 2)
    assert maximal_elements(sigma).points() == [(-1, 1), (0, 0), (1, -1)]


def test_maximal_elements_ignores_corners_below_unbounded_boxes():
    """A box unbounded above dominates every corner beneath it"""
    sigma = PointSet.of_boxes([Box((None, 0), (-1, None)), Box.point((-2, 5))], 2)
    assert maximal_elements(sigma).is_empty()


def test_maximal_elements_of_a_quadrant():
    """The quadrant below (-1,-1) has the single maximum (-1,-1)"""
    sigma = PointSet(2, (Box((None, None), (-1, -1)),))
    assert maximal_elements(sigma).points() == [(-1, -1)]


def test_dominates():
    """Every point of sigma sits below a point of delta"""
    sigma = PointSet.of_points([(0, -1), (-3, 0)], 2)
    delta = PointSet.of_points([(0, 0)], 2)
    assert dominates(sigma, delta)
    assert not dominates(delta, sigma)
    assert dominates(PointSet.empty(2), delta)


def _random_points(rng, rank):
    return [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(rng.randint(1, 6))]


def test_order_agrees_with_brute_force():
    """Box-level max and domination match pairwise checks on 1000 random point lists"""
    rng = random.Random(7)
    for _ in range(1000):
        rank = rng.randint(1, 3)
        points, others = _random_points(rng, rank), _random_points(rng, rank)
        sigma = PointSet.of_points(points, rank)
        delta = PointSet.of_points(others, rank)
        assert maximal_elements(sigma).points() == brute_force_max(points)
        assert dominates(sigma, delta) == brute_force_dominates(points, others)


def test_figure_two_domain():
    """X((-2,1),(0,2)) is the vertical strip -2 <= a < 0 together with the row b = 1"""
    x = QDomain((-2, 1), (0, 2), frozenset({1, 2}))
    for a, b in itertools.product(range(-5, 5), repeat=2):
        assert x.contains((a, b)) == (a in (-2, -1) or b == 1)
    assert str(x) == "X((-2,1),(0,2))"
    assert x.pattern == frozenset({1, 2})


def test_qdomain_contains():
    x = QDomain((-2, 1), (0, 2), frozenset({1, 2}))
    assert qdomain_contains(x, (-1, 5))
    assert qdomain_contains(x, (7, 1))
    assert not qdomain_contains(x, (3, 3))
    assert not qdomain_contains(QDomain.empty(2), (0, 0))


def test_qdomain_requires_pattern_inside_q():
    """P(t - s) must lie inside Q"""
    with pytest.raises(PreconditionError):
        QDomain((0, 0), (1, 1), frozenset({1}))
    assert QDomain.empty(2).is_empty()


def test_qdomain_cover_contains_inputs():
    """The cover contains every point of every covered domain"""
    xs = [QDomain((0, 0), (2, 0), frozenset({1})), QDomain((-3, 1), (-1, 1), frozenset({1}))]
    cover = qdomain_cover(xs, {1})
    for x in xs:
        for n in itertools.product(range(-6, 6), repeat=2):
            if x.contains(n):
                assert cover.contains(n)


def test_escape_multiplier_leaves_the_domain():
    """Some translate by j*u*m leaves the domain for j in 0..#P(m)"""
    x = QDomain((-2, 1), (0, 2), frozenset({1, 2}))
    m = (1, 1)
    u = escape_multiplier(x, m)
    assert u == 2
    for w in itertools.product(range(-4, 4), repeat=2):
        assert any(
            not x.contains(tuple(a + j * u * c for a, c in zip(w, m))) for j in range(3)
        )


def test_escape_multiplier_rejects_zero():
    """m = 0 is outside the precondition"""
    with pytest.raises(PreconditionError):
        escape_multiplier(QDomain.empty(2), (0, 0))


def _random_qdomain(rng, q):
    s = tuple(rng.randint(-3, 3) for _ in range(2))
    widths = tuple(rng.randint(0, 3) if i + 1 in q else 0 for i in range(2))
    return QDomain(s, tuple(a + w for a, w in zip(s, widths)), frozenset(q))


PATTERNS = [frozenset({1}), frozenset({2}), frozenset({1, 2})]


def test_qdomain_cover_matches_brute_force():
    """On 1000 random families every member point lies in the cover"""
    rng = random.Random(11)
    window = list(itertools.product(range(-6, 7), repeat=2))
    for _ in range(1000):
        q = rng.choice(PATTERNS)
        xs = [_random_qdomain(rng, q) for _ in range(rng.randint(1, 3))]
        cover = qdomain_cover(xs, q)
        assert cover.pattern <= q
        for n in window:
            if any(x.contains(n) for x in xs):
                assert cover.contains(n)


def test_escape_multiplier_matches_brute_force():
    """u is the least multiplier whose translates always leave the domain"""
    rng = random.Random(13)
    window = list(itertools.product(range(-4, 5), repeat=2))
    for _ in range(1000):
        m = (rng.randint(0, 3), rng.randint(0, 3))
        if not any(m):
            continue
        x = _random_qdomain(rng, support_pattern(m))
        u = escape_multiplier(x, m)
        width = [t - s for s, t in zip(x.s, x.t)]
        assert all(u * m[i] >= width[i] for i in range(2) if m[i])
        if u > 1:
            assert not all((u - 1) * m[i] >= width[i] for i in range(2) if m[i])
        steps = len(support_pattern(m))
        for w in window:
            assert any(
                not x.contains(tuple(a + j * u * c for a, c in zip(w, m)))
                for j in range(steps + 1)
            )


def test_enclosing_qdomain_finds_domain():
    """A half-strip bounded in coordinate 1 lies in a {1}-domain"""
    region = PointSet(2, (Box((0, None), (0, -1)),))
    domain, witness = enclosing_qdomain(region, {1})
    assert witness is None
    assert domain.contains((0, -7))
    assert format_pattern(domain.q) == "{1}"


def test_enclosing_qdomain_reports_escaping_box():
    """A half-strip unbounded in coordinate 2 fits no {2}-domain"""
    box = Box((0, None), (0, -1))
    domain, witness = enclosing_qdomain(PointSet(2, (box,)), {2})
    assert domain is None
    assert witness == box


def test_empty_region_fits_the_empty_pattern():
    """The empty set is the only region inside an {}-domain"""
    domain, witness = enclosing_qdomain(PointSet.empty(2), set())
    assert witness is None and domain.is_empty()
    domain, witness = enclosing_qdomain(PointSet.of_points([(0, 0)], 2), set())
    assert domain is None

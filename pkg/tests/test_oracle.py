import random

import pytest

from algebra.constructions import directions
from algebra.monomials import MonomialPrime
from engine.complexes import CechComplex, KoszulComplex
from invariants.anchors import anchor_points
from oracle.sampling import random_grading, random_ideal, random_koszul, random_module
from oracle.windowed import (
    Window,
    degree_cohomology,
    support_mismatches,
    windowed_anchor_points,
    windowed_kills,
    windowed_support,
)
from utils.errors import PreconditionError
from utils.linalg import FieldSpec


def test_window_points_and_membership():
    """A window enumerates its lattice points"""
    window = Window.cube(2, -1, 1)
    assert len(list(window.points())) == 9
    assert window.contains((1, -1))
    assert not window.contains((2, 0))
    with pytest.raises(PreconditionError):
        Window((1,), (0,))


def test_degree_cohomology_matches_hand_count(free, ideal):
    """H^2_m(S) at (-1,-1) is one-dimensional"""
    C = CechComplex(ideal((1, 0), (0, 1)), free)
    assert degree_cohomology(C, (-1, -1)) == (0, 0, 1)
    assert degree_cohomology(C, (0, -1)) == (0, 0, 0)


def test_windowed_support_of_a_koszul_complex(free):
    """Ext^1(S/(x), S) is nonzero exactly at x-degree -1"""
    C = KoszulComplex((0,), free)
    found = windowed_support(C, 1, Window.cube(2, -2, 2))
    assert sorted(found) == [(-1, b) for b in range(0, 3)]


def _random_complexes(rng, count):
    """Pairs of a Čech complex and a localized Koszul complex over the same random module."""
    for _ in range(count):
        g = random_grading(rng)
        M = random_module(rng, g)
        yield CechComplex(random_ideal(rng, g.n), M)
        yield random_koszul(rng, M)


@pytest.mark.integration
def test_engine_matches_oracle_on_random_instances(engine):
    """Cell-engine supports and dimensions equal the brute-force ones on a window"""
    rng = random.Random(1234)
    for C in _random_complexes(rng, 15):
        window = Window.cube(C.module.grading.n, -3, 3)
        assert support_mismatches(C, engine, window) == [], f"{C}"


def test_random_koszul_is_localized_away_from_its_variables():
    rng = random.Random(5)
    for C in _random_complexes(rng, 20):
        if isinstance(C, KoszulComplex):
            assert C.variables
            assert not C.inverted & set(C.variables)


@pytest.mark.slow
def test_engine_matches_oracle_at_full_scale(engine):
    """Three variables, rank up to 3, exponents up to 3, window [-6,6]"""
    rng = random.Random(20240611)
    for C in _random_complexes(rng, 25):
        window = Window.cube(C.module.grading.n, -6, 6)
        assert support_mismatches(C, engine, window) == [], f"{C}"


@pytest.mark.integration
def test_engine_matches_oracle_over_gf2(engine, bigraded):
    """The comparison holds in characteristic 2 as well"""
    rng = random.Random(99)
    g = bigraded.with_field(FieldSpec(2))
    for _ in range(5):
        M = random_module(rng, g)
        for C in (CechComplex(random_ideal(rng, 2), M), random_koszul(rng, M)):
            assert support_mismatches(C, engine, Window.cube(2, -3, 3)) == []


def test_windowed_kills_agrees_on_a_quotient(quotient_x, ideal):
    """x kills H^1_(y)(S/(x)) and y does not, seen on a window"""
    C = CechComplex(ideal((0, 1)), quotient_x)
    window = Window.cube(2, -3, 3)
    assert windowed_kills(C, 1, (1, 0), window)
    assert not windowed_kills(C, 1, (0, 1), window)


@pytest.mark.integration
def test_engine_kills_implies_windowed_kills(engine):
    """Whenever the engine says x^c is zero, it is zero on every window"""
    rng = random.Random(4321)
    for _ in range(10):
        g = random_grading(rng, max_vars=2)
        b = random_ideal(rng, g.n, max_gens=2)
        M = random_module(rng, g, max_summands=1)
        C = CechComplex(b, M)
        c = tuple(rng.randint(0, 2) for _ in range(g.n))
        window = Window.cube(g.n, -2, 2)
        for k in range(C.length + 1):
            if engine.kills(C, k, c):
                assert windowed_kills(C, k, c, window)


def test_windowed_anchor_points_match_engine(engine, free, quotient_x, bigraded):
    """Anchor points seen on a window agree with the exact ones"""
    p = MonomialPrime(2, frozenset({0}))
    window = Window.cube(2, -3, 3)
    for M in (free, quotient_x):
        for i in range(2):
            exact = anchor_points(p, M, i, engine).points
            dirs = sorted(directions(p.ideal, bigraded))
            seen = windowed_anchor_points([0], M, i, dirs, window)
            assert seen.points() == exact.points_in((-3,), (3,))

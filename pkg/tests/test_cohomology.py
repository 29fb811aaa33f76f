import itertools

import pytest

from algebra.modules import GradedModule, Summand
from algebra.monomials import MonomialIdeal
from engine import complexes
from engine.cells import localization_support
from engine.cohomology import INFINITE, CohomologyEngine, coarse_image, count_fixed_sum, format_dimension
from engine.complexes import CechComplex, KoszulComplex
from instance_io.parser import load
from utils.errors import PreconditionError

pytestmark = pytest.mark.unit

LO, HI = (-3, -3), (3, 3)


def window_table(predicate):
    return {
        a: 1
        for a in itertools.product(range(LO[0], HI[0] + 1), range(LO[1], HI[1] + 1))
        if predicate(*a)
    }


def test_local_cohomology_at_a_variable(engine, free, ideal):
    """H^1_(x)(S) lives where x has negative and y nonnegative exponent"""
    b = ideal((1, 0))
    assert engine.vanishes(b, free, 0)
    region = engine.global_support(b, free, 1)
    assert region.restrict(LO, HI) == window_table(lambda a, c: a <= -1 and c >= 0)


def test_local_cohomology_at_the_maximal_ideal(engine, free, ideal):
    """H^2_m(S) is the negative quadrant; lower indices vanish"""
    m = ideal((1, 0), (0, 1))
    assert engine.vanishes(m, free, 0)
    assert engine.vanishes(m, free, 1)
    region = engine.global_support(m, free, 2)
    assert region.restrict(LO, HI) == window_table(lambda a, c: a <= -1 and c <= -1)
    assert engine.fine_slice_cohomology(CechComplex(m, free), (-1, -1)) == (0, 0, 1)


def test_local_cohomology_at_a_product(engine, free, ideal):
    """H^1_(xy)(S) is everything outside the positive quadrant"""
    region = engine.global_support(ideal((1, 1)), free, 1)
    assert region.restrict(LO, HI) == window_table(lambda a, c: a < 0 or c < 0)


def test_local_cohomology_of_a_quotient(engine, quotient_x, ideal):
    """H^1_(y)(S/(x)) is the negative half of the y-axis"""
    region = engine.global_support(ideal((0, 1)), quotient_x, 1)
    assert region.restrict(LO, HI) == window_table(lambda a, c: a == 0 and c <= -1)


def test_indices_beyond_the_complex_vanish(engine, free, ideal):
    """H^i_b(M) = 0 for i past the number of generators"""
    assert engine.global_support(ideal((1, 0)), free, 5).is_empty()


def test_component_dimensions_standard_grading(engine, standard, ideal):
    """dim H^2_m(S)_n counts monomials of degree -n-2 in the inverses"""
    S = GradedModule.free(standard)
    m = ideal((1, 0), (0, 1))
    assert engine.component_dim(m, S, 2, (-1,)) == 0
    assert engine.component_dim(m, S, 2, (-2,)) == 1
    assert engine.component_dim(m, S, 2, (-4,)) == 3
    assert engine.infinite_component(m, S, 2) is None


def test_infinite_components(engine, standard, ideal):
    """H^1_(x)(S) has infinite-dimensional coarse components when x, y share a color"""
    S = GradedModule.free(standard)
    b = ideal((1, 0))
    assert engine.component_dim(b, S, 1, (0,)) == INFINITE
    assert engine.infinite_component(b, S, 1) is not None
    assert format_dimension(INFINITE) == "INFINITE"


def test_contrast_case_is_infinite_in_every_coarse_degree(engine, instance_path):
    """Over E2, H^1_(x)(S) is infinite-dimensional in every degree of [-6,6]; H^0 vanishes"""
    e2 = load(instance_path("E2.inst"))
    b, S = e2.ideal("bx"), e2.module("S")
    for n in range(-6, 7):
        assert engine.component_dim(b, S, 1, (n,)) == INFINITE
        assert engine.component_dim(b, S, 0, (n,)) == 0


def test_component_dim_checks_rank(engine, free, ideal):
    """Coarse degrees must have the grading's rank"""
    with pytest.raises(PreconditionError):
        engine.component_dim(ideal((1, 0)), free, 1, (0,))


@pytest.mark.parametrize(
    "intervals,total,expected",
    [
        ([(0, 2), (0, 2)], 2, 3),
        ([(None, -1), (None, -1)], -3, 2),
        ([(0, None), (None, 0)], 5, INFINITE),
        ([(0, None), (0, 0)], 4, 1),
        ([], 0, 1),
        ([(1, 3)], 0, 0),
    ],
)
def test_count_fixed_sum(intervals, total, expected):
    """Points of a box on a hyperplane of fixed coordinate sum"""
    assert count_fixed_sum(intervals, total) == expected


def test_monomial_nilpotency(engine, quotient_x, ideal):
    """x kills H^1_(y)(S/(x)); y acts injectively"""
    b = ideal((0, 1))
    assert engine.monomial_nilpotency(b, quotient_x, 1, (1, 0)) == 1
    assert engine.monomial_nilpotency(b, quotient_x, 1, (0, 1)) is None
    assert engine.monomial_nilpotency(b, quotient_x, 0, (0, 1)) == 0


def test_monomial_nilpotency_needs_powers(engine, bigraded, ideal):
    """x^2 = 0 on S/(x^2) but x itself is not zero there"""
    M = GradedModule.cyclic(bigraded, ideal((2, 0)))
    assert engine.monomial_nilpotency(ideal((0, 1)), M, 1, (1, 0)) == 2


def test_annihilation_exponent(engine, quotient_x, free, ideal):
    """R_(1,0) = (x) annihilates H^1_(y)(S/(x)); nothing annihilates H^1_(x)(S)"""
    assert engine.annihilation_exponent(ideal((0, 1)), quotient_x, 1, (1, 0)) == 1
    assert engine.annihilation_exponent(ideal((0, 1)), quotient_x, 1, (0, 1)) is None
    assert engine.annihilation_exponent(ideal((1, 0)), free, 1, (1, 0)) is None
    assert engine.annihilation_exponent(ideal((1, 0)), free, 0, (1, 0)) == 0


def test_annihilation_exponent_rejects_zero_degree(engine, free, ideal):
    """m = 0 is outside N_0^r minus 0"""
    with pytest.raises(PreconditionError):
        engine.annihilation_exponent(ideal((1, 0)), free, 1, (0, 0))


def test_kills_on_a_complex(engine, quotient_x, ideal):
    """kills answers the multiplication question on a single complex"""
    C = CechComplex(ideal((0, 1)), quotient_x)
    assert engine.kills(C, 1, (1, 0))
    assert not engine.kills(C, 1, (0, 3))


def test_koszul_ext(engine, free):
    """Ext^1(S/(x), S) is S/(x) moved to x-degree -1"""
    region = engine.ext_support([0], free, 1)
    assert region.restrict(LO, HI) == window_table(lambda a, c: a == -1 and c >= 0)
    assert engine.ext_support([0], free, 0).is_empty()
    C = KoszulComplex((0,), free, frozenset({1}))
    assert engine.support_of(C, 1).restrict(LO, HI) == window_table(lambda a, c: a == -1)


def test_results_independent_of_worker_count(free, quotient_x, ideal):
    """Cell evaluation order does not leak into results"""
    b = ideal((1, 0), (0, 1))
    single = CohomologyEngine(max_workers=1)
    wide = CohomologyEngine(max_workers=4)
    for M in (free, quotient_x):
        for i in range(3):
            assert single.global_support(b, M, i) == wide.global_support(b, M, i)


def test_decompositions_are_cached(engine, free, ideal, mocker):
    """A complex is evaluated once per engine"""
    spy = mocker.spy(engine, "decompose")
    calls = mocker.patch("engine.cohomology.slice_cohomology", wraps=complexes.slice_cohomology)
    engine.global_support(ideal((1, 0)), free, 1)
    first = calls.call_count
    engine.global_support(ideal((1, 0)), free, 0)
    assert calls.call_count == first
    assert spy.call_count == 2


def test_constancy_check_passes(free, quotient_x, ideal):
    """Slice cohomology is constant on every cell"""
    checked = CohomologyEngine(max_workers=1, check_constancy=True)
    for b in (ideal((1, 0)), ideal((1, 1)), ideal((2, 0), (1, 2))):
        for M in (free, quotient_x):
            checked.decompose(CechComplex(b, M))


def test_describe_mentions_cells(engine, free, ideal):
    text = engine.describe(ideal((1, 0)), free, 1)
    assert text.startswith("H^1_(x)(")
    assert "cells" in text


def test_localization_support(ideal):
    """(S/(x^2))[y^-1] lives at x-degrees 0 and 1 with y free; inverting x kills it"""
    summand = Summand((0, 0), ideal((2, 0)))
    region = localization_support(summand, {1})
    assert region.contains((1, -5)) and region.contains((0, 7))
    assert not region.contains((2, 0)) and not region.contains((-1, 0))
    assert localization_support(summand, {0}).is_empty()


def test_localization_support_respects_shift(ideal):
    """S(-(1,1))/(x) starts at (1,1)"""
    region = localization_support(Summand((1, 1), ideal((1, 0))), set())
    assert region.contains((1, 1)) and region.contains((1, 9))
    assert not region.contains((2, 1)) and not region.contains((1, 0))


def test_coarse_image(standard):
    """N^2 collapses to N under the total degree"""
    region = localization_support(Summand((0, 0), MonomialIdeal.zero(2)), set())
    image = coarse_image(region, standard)
    assert image.contains((0,)) and image.contains((12,))
    assert not image.contains((-1,))

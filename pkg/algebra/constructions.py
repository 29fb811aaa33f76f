"""Ideal constructions attached to a standard grading, and direction sets."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, List, Sequence

from algebra.grading import GradingSpec
from algebra.monomials import MonomialIdeal, MonomialPrime, Monomial
from lattice.degrees import Pattern, check_pattern


def directions(b: MonomialIdeal, g: GradingSpec) -> Pattern:
    """dir(b): colors all of whose variables lie in the radical of b."""
    g.require_standard("direction sets")
    in_radical = b.variables_in_radical()
    return frozenset(
        c
        for c in range(1, g.rank + 1)
        if set(g.variables_of_color(c)) <= in_radical
    )


def ideal_Rplus(g: GradingSpec) -> MonomialIdeal:
    """R_+: generated by the products of one variable of each color."""
    g.require_standard("R_+")
    gens = []
    for choice in itertools.product(*(g.variables_of_color(c) for c in range(1, g.rank + 1))):
        exps = [0] * g.n
        for j in choice:
            exps[j] = 1
        gens.append(exps)
    return MonomialIdeal.from_generators(gens, g.n)


def ideal_c(g: GradingSpec) -> MonomialIdeal:
    """c: the ideal of all elements of positive degree."""
    g.require_standard("c")
    return MonomialIdeal.of_variables(g.colored_variables(), g.n)


def ideal_cQ(g: GradingSpec, q: Iterable[int]) -> MonomialIdeal:
    g.require_standard("c^Q")
    q = check_pattern(q, g.rank)
    return MonomialIdeal.of_variables(
        [j for c in sorted(q) for j in g.variables_of_color(c)], g.n
    )


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cut + (total + parts - 1,)
        yield tuple(bounds[k + 1] - bounds[k] - 1 for k in range(parts))


def monomials_of_degree(g: GradingSpec, n: Sequence[int]) -> Iterator[Monomial]:
    """Monomials of coarse degree n in the positively colored variables."""
    if any(v < 0 for v in n):
        return
    per_color = []
    for c in range(1, g.rank + 1):
        per_color.append(list(_compositions(n[c - 1], len(g.variables_of_color(c)))))
    for combo in itertools.product(*per_color):
        exps = [0] * g.n
        for c, part in enumerate(combo, start=1):
            for j, e in zip(g.variables_of_color(c), part):
                exps[j] = e
        yield tuple(exps)


def upward_closure_holds(a: MonomialIdeal, t: Sequence[int], g: GradingSpec) -> bool:
    """
    a contains R_n for every n >= t.

    R_n is zero off N_0^r and R_n = R_m R_(n-m) for n >= m >= 0 in a standard
    grading, so the single corner max(t, 0) decides it.
    """
    g.require_standard("upward closure")
    corner = tuple(max(x, 0) for x in t)
    return all(a.contains(mono) for mono in monomials_of_degree(g, corner))


def saturated_chain(p: MonomialPrime, q: MonomialPrime) -> bool:
    """p is properly inside q with no graded prime strictly between."""
    return p.variables < q.variables and len(q.variables) == len(p.variables) + 1


def primes_containing(b: MonomialIdeal) -> List[MonomialPrime]:
    """Every monomial prime containing b, smallest first."""
    n = b.nvars
    primes = [
        MonomialPrime(n, frozenset(subset))
        for size in range(n + 1)
        for subset in itertools.combinations(range(n), size)
    ]
    return [p for p in primes if p.contains_ideal(b)]


def star_maximal_prime(g: GradingSpec) -> MonomialPrime:
    """The unique *maximal monomial prime: every variable."""
    return MonomialPrime(g.n, frozenset(range(g.n)))

"""Seeded random instances for oracle sweeps."""

from __future__ import annotations

import random
from typing import List

from algebra.grading import GradingSpec
from algebra.modules import GradedModule, Summand
from algebra.monomials import MonomialIdeal
from engine.complexes import KoszulComplex

NAMES = ("x", "y", "z", "w")


def random_grading(rng: random.Random, max_vars: int = 3, max_rank: int = 3) -> GradingSpec:
    """Standard grading on 2..max_vars variables with rank 1..max_rank."""
    n = rng.randint(2, max_vars)
    rank = rng.randint(1, min(max_rank, n))
    colors = list(range(1, rank + 1)) + [rng.randint(1, rank) for _ in range(n - rank)]
    rng.shuffle(colors)
    return GradingSpec.of(NAMES[:n], colors, rank)


def random_monomial(rng: random.Random, n: int, max_exp: int = 3) -> List[int]:
    exps = [rng.randint(0, max_exp) for _ in range(n)]
    if not any(exps):
        exps[rng.randrange(n)] = 1
    return exps


def random_ideal(rng: random.Random, n: int, max_gens: int = 3, max_exp: int = 3) -> MonomialIdeal:
    count = rng.randint(1, max_gens)
    return MonomialIdeal.from_generators(
        [random_monomial(rng, n, max_exp) for _ in range(count)], n
    )


def random_module(rng: random.Random, g: GradingSpec, max_summands: int = 2) -> GradedModule:
    """Sum of shifted cyclic quotients; a third of the summands are free."""
    summands = []
    for _ in range(rng.randint(1, max_summands)):
        shift = tuple(rng.randint(-1, 1) for _ in range(g.n))
        if rng.random() < 1 / 3:
            ideal = MonomialIdeal.zero(g.n)
        else:
            ideal = random_ideal(rng, g.n, max_gens=2)
        summands.append(Summand(shift, ideal))
    return GradedModule(g, tuple(summands))


def random_koszul(rng: random.Random, M: GradedModule) -> KoszulComplex:
    """Ext against a random variable prime, localized at half of the remaining variables."""
    order = list(range(M.grading.n))
    rng.shuffle(order)
    size = rng.randint(1, len(order))
    inverted = frozenset(v for v in order[size:] if rng.random() < 0.5)
    return KoszulComplex(tuple(sorted(order[:size])), M, inverted)

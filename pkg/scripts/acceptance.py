"""
Long-running acceptance runs.

Random Čech and localized Koszul complexes are compared with the windowed
oracle, ends with anchor projections on random instances, and anchor lifting
is checked for every module of every bundled instance. The product supports
of the Segre-type example are redrawn last. Exits 1 on any failed or
inconclusive check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Dict, List

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from algebra.constructions import directions  # noqa: E402
from algebra.grading import GradingSpec  # noqa: E402
from algebra.modules import GradedModule  # noqa: E402
from algebra.monomials import MonomialIdeal  # noqa: E402
from cli.main import BUNDLED  # noqa: E402
from cli.render import RenderSpec, render_ascii  # noqa: E402
from config.logging_config import setup_logging  # noqa: E402
from config.settings import get_settings  # noqa: E402
from engine.cohomology import CohomologyEngine  # noqa: E402
from engine.complexes import CechComplex  # noqa: E402
from instance_io.models import Instance, InstanceFile, RingDecl, SummandDecl, TaskDecl  # noqa: E402
from instance_io.parser import load, load_text  # noqa: E402
from instance_io.serializer import serialize  # noqa: E402
from invariants.kunneth import example_supports, kunneth_gdims, kunneth_supports  # noqa: E402
from invariants.verify import verify  # noqa: E402
from lattice.degrees import format_pattern  # noqa: E402
from oracle.sampling import random_grading, random_ideal, random_koszul, random_module  # noqa: E402
from oracle.windowed import Window, support_mismatches  # noqa: E402

FIGURE_GDIMS = {frozenset(): 2, frozenset({1}): 3, frozenset({2}): 2, frozenset({1, 2}): 5}


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the acceptance sweeps.")
    parser.add_argument("--seed", type=int, default=20240611, help="Random seed (default: 20240611)")
    parser.add_argument("--instances", type=int, default=200, help="Oracle sweep size (default: 200)")
    parser.add_argument("--ends", type=int, default=50, help="End/anchor sweep size (default: 50)")
    parser.add_argument("--radius", type=int, default=6, help="Oracle window half-width (default: 6)")
    parser.add_argument("--report", default=None, help="Optional JSON summary path")
    return parser.parse_args()


def oracle_sweep(rng: random.Random, count: int, radius: int, engine: CohomologyEngine) -> List[str]:
    """Čech and localized Koszul complexes over each random module against the brute force."""
    failures: List[str] = []
    for k in range(count):
        g = random_grading(rng)
        b = random_ideal(rng, g.n)
        M = random_module(rng, g)
        window = Window.cube(g.n, -radius, radius)
        for i in support_mismatches(CechComplex(b, M), engine, window):
            failures.append(f"#{k} {b.format(g.names)} on {M.format()} H^{i}")
        K = random_koszul(rng, M)
        for i in support_mismatches(K, engine, window):
            names = ",".join(g.names[v] for v in K.variables)
            inverted = ",".join(g.names[v] for v in sorted(K.inverted))
            failures.append(f"#{k} Ext^{i}(S/({names}), {M.format()}) inverting [{inverted}]")
    return failures


def _as_instance(g: GradingSpec, b: MonomialIdeal, M: GradedModule) -> Instance:
    ideals: Dict[str, List[List[int]]] = {"b": [list(u) for u in b.generators]}
    summands = []
    for j, s in enumerate(M.summands):
        ideals[f"i{j}"] = [list(u) for u in s.ideal.generators]
        summands.append(SummandDecl(shift=list(s.shift), ideal=f"i{j}"))
    decl = InstanceFile(
        ring=RingDecl(variables=list(g.names), colors=list(g.colors), rank=g.rank),
        ideals=ideals,
        modules={"M": summands},
        primes={},
        tasks={"ends": TaskDecl(theorem="thm3.5", params={"ideal": "b", "module": "M"})},
    )
    return load_text(serialize(decl), name="random")


def ends_sweep(rng: random.Random, count: int, engine: CohomologyEngine) -> Dict[str, List[str]]:
    outcome: Dict[str, List[str]] = {"pass": [], "fail": [], "inconclusive": []}
    while sum(len(v) for v in outcome.values()) < count:
        g = random_grading(rng)
        b = random_ideal(rng, g.n)
        if not directions(b, g):
            continue
        instance = _as_instance(g, b, random_module(rng, g))
        report = verify("thm3.5", instance, {"ideal": "b", "module": "M"}, engine)
        outcome[report.status].append(f"{instance.digest} {b.format(g.names)}")
    return outcome


def lifting_sweep(engine: CohomologyEngine) -> Dict[str, List[str]]:
    """Anchor lifting over every saturated prime pair, for every module of every bundled instance."""
    outcome: Dict[str, List[str]] = {"pass": [], "fail": [], "inconclusive": []}
    for path in sorted(BUNDLED.glob("*.inst")):
        instance = load(str(path))
        for name in sorted(instance.modules):
            report = verify("thm2.11", instance, {"module": name}, engine)
            outcome[report.status].append(f"{path.name} {name}: " + "; ".join(report.witnesses))
    return outcome


def figure_check() -> List[str]:
    supp_a, supp_b = example_supports()
    supports = kunneth_supports(supp_a, supp_b)
    spec = RenderSpec.square(2, -5, 4)
    for i in range(2, 6):
        sys.stdout.write(render_ascii(supports[i], spec, f"S(H^{i}_R+(A#B))"))
    return [
        f"g^{format_pattern(q)} = {value}, expected {FIGURE_GDIMS[q]}"
        for q, value in kunneth_gdims(supp_a, supp_b)
        if value != FIGURE_GDIMS[q]
    ]


def exit_code(summary: dict) -> int:
    """0 only when every sweep came back clean; inconclusive verdicts count against the run."""
    dirty = (
        summary["oracle"]["failures"]
        or summary["figure_failures"]
        or any(summary[sweep][status] for sweep in ("ends", "lifting") for status in ("fail", "inconclusive"))
    )
    return 1 if dirty else 0


def main() -> int:
    args = parse_args()
    settings = get_settings()
    setup_logging(settings.LOG_LEVEL, settings.ENV)
    rng = random.Random(args.seed)
    engine = CohomologyEngine(max_workers=settings.MAX_WORKERS)

    oracle_failures = oracle_sweep(rng, args.instances, args.radius, engine)
    ends = ends_sweep(rng, args.ends, engine)
    lifting = lifting_sweep(engine)
    figure_failures = figure_check()

    summary = {
        "seed": args.seed,
        "oracle": {"instances": args.instances, "radius": args.radius, "failures": oracle_failures},
        "ends": {k: len(v) for k, v in ends.items()},
        "ends_failures": ends["fail"] + ends["inconclusive"],
        "lifting": {k: len(v) for k, v in lifting.items()},
        "lifting_failures": lifting["fail"] + lifting["inconclusive"],
        "figure_failures": figure_failures,
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    if args.report:
        Path(args.report).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return exit_code(summary)


if __name__ == "__main__":
    sys.exit(main())

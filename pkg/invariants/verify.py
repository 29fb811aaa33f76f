"""
Theorem checkers.

Each checker computes the sides of a statement independently and compares
them on one instance. A registered check declares the task parameters it
accepts; ``verify`` runs one check and wraps the outcome in a ``Report``.
Only monomial primes are ever quantified over.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Literal, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from algebra.constructions import (
    directions,
    ideal_cQ,
    ideal_Rplus,
    monomials_of_degree,
    primes_containing,
    saturated_chain,
    star_maximal_prime,
)
from algebra.grading import GradingSpec
from algebra.modules import GradedModule, regrade
from algebra.monomials import MonomialIdeal, MonomialPrime
from config.settings import get_settings
from engine.cohomology import CohomologyEngine
from engine.complexes import CechComplex
from instance_io.models import Instance
from invariants.anchors import all_anchor_points, anchor_points, anchor_region, regraded_anchor_points
from invariants.ends import a_star, end_of, ends_upto, max_of_union, q_bound
from invariants.finiteness import (
    annihilation_gdim,
    first_infinite_support,
    finiteness_dimension_f,
    format_findim,
    geometric_gdim,
    grade,
)
from lattice.degrees import (
    Projection,
    direction_projection,
    format_degree,
    format_pattern,
    relative_projection,
    support_pattern,
)
from lattice.order import dominates
from lattice.regions import PointSet
from oracle.windowed import Window, windowed_anchor_points, windowed_support
from utils.errors import (
    PreconditionError,
    TheoremViolationError,
    UndefinedInvariantError,
    UnsupportedInstanceError,
    UsageError,
)

logger = logging.getLogger(__name__)

MONOMIAL_NOTE = "primes quantified over monomial primes only"

Status = Literal["pass", "fail", "inconclusive"]


class Report(BaseModel):
    theorem: str
    instance: str
    task: str = ""
    status: Status
    witnesses: List[str] = Field(default_factory=list)
    note: str = MONOMIAL_NOTE

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def lines(self) -> List[str]:
        head = " ".join(part for part in (self.task, self.theorem, self.instance, self.status) if part)
        return [head] + [f"  {w}" for w in sorted(self.witnesses)] + [f"  note: {self.note}"]


@dataclass(frozen=True)
class Outcome:
    status: Status
    witnesses: Tuple[str, ...] = ()


@dataclass
class CheckContext:
    instance: Instance
    params: Mapping[str, str]
    engine: CohomologyEngine

    @property
    def grading(self) -> GradingSpec:
        return self.instance.grading

    def _raw(self, key: str, default: Optional[str] = None) -> str:
        if key in self.params:
            return self.params[key]
        if default is None:
            raise UsageError(f"missing parameter {key!r}")
        return default

    def has(self, key: str) -> bool:
        return key in self.params

    def ideal(self, key: str = "ideal") -> MonomialIdeal:
        return self.instance.ideal(self._raw(key))

    def module(self, key: str = "module") -> GradedModule:
        return self.instance.module(self._raw(key))

    def prime(self, key: str = "prime") -> MonomialPrime:
        return self.instance.prime(self._raw(key))

    def integer(self, key: str, default: Optional[int] = None) -> int:
        raw = self._raw(key, None if default is None else str(default))
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"parameter {key}={raw!r} is not an integer") from None

    def degree(self, key: str) -> Tuple[int, ...]:
        return _parse_degree(self._raw(key), key)

    def degrees(self, key: str) -> List[Tuple[int, ...]]:
        return [_parse_degree(part, key) for part in self._raw(key).split(";") if part]


def _parse_degree(raw: str, key: str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in raw.split(","))
    except ValueError:
        raise UsageError(f"parameter {key}={raw!r} is not a degree like 1,0") from None


Checker = Callable[[CheckContext], Outcome]


@dataclass(frozen=True)
class Check:
    theorem: str
    params: FrozenSet[str]
    run: Checker
    summary: str


CHECKS: Dict[str, Check] = {}


def register(theorem: str, summary: str, *params: str):
    def decorator(fn: Checker) -> Checker:
        CHECKS[theorem] = Check(theorem, frozenset(params), fn, summary)
        return fn

    return decorator


def _outcome(failures: Sequence[str], passes: Sequence[str] = ()) -> Outcome:
    if failures:
        return Outcome("fail", tuple(failures))
    return Outcome("pass", tuple(passes))


def _primes_with_directions(g: GradingSpec) -> List[MonomialPrime]:
    return [
        p
        for p in primes_containing(MonomialIdeal.zero(g.n))
        if directions(p.ideal, g)
    ]


def _levels(ctx: CheckContext, top: int) -> range:
    if ctx.has("index"):
        i = ctx.integer("index")
        return range(i, i + 1)
    return range(top + 1)


def _anchor_projection_max(
    b: MonomialIdeal, M: GradedModule, j: int, engine: CohomologyEngine
) -> PointSet:
    """max of the union of phi(p;b)(anch^i(p,M)) over i <= j and monomial p containing b."""
    g = M.grading
    dirs_b = directions(b, g)
    pieces = [PointSet.empty(len(dirs_b))]
    for p in primes_containing(b):
        dirs_p = directions(p.ideal, g)
        phi = relative_projection(dirs_p, dirs_b)
        for i in range(min(j, len(p.variables)) + 1):
            pieces.append(anchor_points(p, M, i, engine).points.image(phi))
    return max_of_union(pieces)


# -- anchor points ------------------------------------------------------------


@register("thm2.10", "anchor points are unchanged by regrading along phi(p)", "prime", "module", "index")
def check_anchor_regrading(ctx: CheckContext) -> Outcome:
    p, M = ctx.prime(), ctx.module()
    g = ctx.grading
    radius = get_settings().ORACLE_RADIUS
    window = Window.cube(g.n, -radius, radius)
    dirs = directions(p.ideal, g)
    phi = g.coarse_projection().then(direction_projection(g.rank, dirs))
    failures, passes = [], []
    for i in _levels(ctx, len(p.variables)):
        direct = anchor_points(p, M, i, ctx.engine).points
        regraded = regraded_anchor_points(p, M, i, ctx.engine).points
        if direct != regraded:
            failures.append(f"level {i}: anch = {direct}, after regrading {regraded}")
        seen = anchor_region(p, M, i, ctx.engine).restrict(window.lo, window.hi)
        expected = PointSet.of_points({phi.apply(a) for a in seen}, len(dirs))
        oracle = windowed_anchor_points(sorted(p.variables), M, i, dirs, window)
        if expected != oracle:
            failures.append(f"level {i}: windowed anch {oracle} but cells give {expected}")
        passes.append(f"level {i}: anch = {direct}")
    return _outcome(failures, passes)


@register("thm2.11", "anchor points lift along saturated chains of primes", "module", "prime", "over")
def check_anchor_lifting(ctx: CheckContext) -> Outcome:
    M = ctx.module()
    g = ctx.grading
    names = g.names
    if ctx.has("prime") and ctx.has("over"):
        pairs = [(ctx.prime(), ctx.prime("over"))]
        if not saturated_chain(*pairs[0]):
            raise PreconditionError("prime and over do not form a saturated chain")
    else:
        candidates = _primes_with_directions(g)
        pairs = [(p, q) for p in candidates for q in candidates if saturated_chain(p, q)]
    failures = []
    for p, q in pairs:
        dirs_p, dirs_q = directions(p.ideal, g), directions(q.ideal, g)
        phi = relative_projection(dirs_q, dirs_p)
        for i in range(len(p.variables) + 1):
            lifted = {
                phi.apply(b) for b in anchor_points(q, M, i + 1, ctx.engine).points.points()
            }
            for a in anchor_points(p, M, i, ctx.engine).points.points():
                if a not in lifted:
                    failures.append(
                        f"{p.format(names)} < {q.format(names)} level {i}: "
                        f"{format_degree(a)} has no lift"
                    )
    return _outcome(failures, [f"{len(pairs)} saturated pairs checked"])


@register("cor2.12", "every anchor point lifts to the *maximal prime", "module")
def check_anchor_to_maximal(ctx: CheckContext) -> Outcome:
    M = ctx.module()
    g = ctx.grading
    top = star_maximal_prime(g)
    top_dirs = directions(top.ideal, g)
    top_points = all_anchor_points(top, M, ctx.engine).points()
    failures = []
    primes = _primes_with_directions(g)
    for p in primes:
        phi = relative_projection(top_dirs, directions(p.ideal, g))
        lifted = {phi.apply(b) for b in top_points}
        for a in all_anchor_points(p, M, ctx.engine).points():
            if a not in lifted:
                failures.append(f"{p.format(g.names)}: {format_degree(a)} has no lift")
    return _outcome(failures, [f"{len(primes)} primes checked"])


# -- ends ---------------------------------------------------------------------


@register("thm3.5", "ends equal projected anchor points of the primes containing b", "ideal", "module", "index")
def check_ends_against_anchors(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    failures, passes = [], []
    for j in _levels(ctx, len(b.generators)):
        ends = ends_upto(b, M, j, ctx.engine)
        anchors = _anchor_projection_max(b, M, j, ctx.engine)
        if ends != anchors:
            failures.append(f"j={j}: ends {ends}, anchor projections {anchors}")
        else:
            passes.append(f"j={j}: {ends}")
    if failures:
        return Outcome("inconclusive", tuple(["non-monomial prime required"] + failures))
    return Outcome("pass", tuple(passes))


@register("def3.4", "end coordinates are bounded by the a*-invariants", "ideal", "module")
def check_a_star_bound(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    dirs = sorted(directions(b, g))
    failures, passes = [], []
    for position, color in enumerate(dirs):
        bound = a_star(M, color, ctx.engine)
        passes.append(f"a*(M^phi_{color}) = {'-inf' if bound is None else bound}")
        for j in range(len(b.generators) + 1):
            for point in end_of(b, M, j, ctx.engine).points.points():
                if bound is None or point[position] > bound:
                    failures.append(f"j={j}: end point {format_degree(point)} exceeds a* along color {color}")
    return _outcome(failures, passes)


@register("cor3.7", "ends are dominated by those of c^dir(b) and by bnd^dir(b)", "ideal", "module")
def check_end_domination(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    dirs = directions(b, g)
    c = ideal_cQ(g, dirs)
    bound = q_bound(M, dirs, ctx.engine)
    failures = []
    for j in range(len(b.generators) + 1):
        ends = ends_upto(b, M, j, ctx.engine)
        wider = ends_upto(c, M, j, ctx.engine)
        if not dominates(ends, wider):
            failures.append(f"j={j}: {ends} not dominated by c-ends {wider}")
        if not dominates(wider, bound):
            failures.append(f"j={j}: c-ends {wider} not dominated by bnd {bound}")
    return _outcome(failures, [f"bnd^{format_pattern(dirs)} = {bound}"])


@register("cor3.8", "the max of ends stabilizes at the generator count", "ideal", "module")
def check_end_stabilization(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    t = len(b.generators)
    settled = ends_upto(b, M, t, ctx.engine)
    anchors = _anchor_projection_max(b, M, t, ctx.engine)
    failures = []
    if settled != anchors:
        failures.append(f"t={t}: ends {settled}, anchor projections {anchors}")
    for k in (t + 1, t + 2):
        later = ends_upto(b, M, k, ctx.engine)
        if later != settled:
            failures.append(f"k={k}: {later} differs from {settled}")
        later_anchors = _anchor_projection_max(b, M, k, ctx.engine)
        if later_anchors != settled:
            failures.append(f"k={k}: anchor projections {later_anchors} differ from {settled}")
    return _outcome(failures, [f"t={t}: {settled}"])


@register("cor3.10", "ends reduce to the ends at the *maximal prime", "ideal", "module")
def check_ends_at_maximal(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    top = star_maximal_prime(g).ideal
    phi = relative_projection(directions(top, g), directions(b, g))
    ends = ends_upto(b, M, len(b.generators), ctx.engine)
    reduced = max_of_union(
        end_of(top, M, i, ctx.engine).points.image(phi) for i in range(len(top.generators) + 1)
    )
    if ends != reduced:
        return Outcome("fail", (f"ends {ends}, via the *maximal prime {reduced}",))
    return Outcome("pass", (f"{ends}",))


# -- vanishing ----------------------------------------------------------------


def _vanishing_corner(b: MonomialIdeal, M: GradedModule, engine: CohomologyEngine) -> Tuple[Optional[int], List[str]]:
    """Least t with every H^i_b(M) zero on n >= (t,...,t); None if all vanish."""
    corner: Optional[int] = None
    failures = []
    for i in range(len(b.generators) + 1):
        for box in engine.coarse_support(b, M, i).boxes:
            if all(hi is None for hi in box.hi):
                failures.append(f"H^{i}: box {box} is unbounded along every color")
                continue
            t = min(hi for hi in box.hi if hi is not None) + 1
            corner = t if corner is None else max(corner, t)
    return corner, failures


def _require_rplus(b: MonomialIdeal, g: GradingSpec) -> None:
    rplus = ideal_Rplus(g)
    if not b.radical().contains_ideal(rplus):
        raise PreconditionError(
            f"b = {b.format(g.names)} does not contain R_+ = {rplus.format(g.names)} up to radical"
        )


@register("thm4.2", "H^i_b(M)_n = 0 for n >= (t,...,t) when b contains R_+", "ideal", "module")
def check_high_degree_vanishing(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    _require_rplus(b, g)
    t, failures = _vanishing_corner(b, M, ctx.engine)
    if failures:
        return Outcome("fail", tuple(failures))
    if t is None:
        return Outcome("pass", ("every H^i vanishes",))
    radius = get_settings().ORACLE_RADIUS
    window = Window.cube(g.n, t - radius, t + 5)
    C = CechComplex(b, M)
    for i in range(C.length + 1):
        for a in windowed_support(C, i, window):
            if all(x >= t for x in g.degree_of(a)):
                failures.append(f"H^{i} nonzero at fine degree {format_degree(a)} above t={t}")
    return _outcome(failures, [f"t={t}"])


@register("cor4.4", "vanishing along (non-directions, sum of directions)", "ideal", "module")
def check_mixed_vanishing(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    dirs = directions(b, g)
    rest = [c for c in range(1, g.rank + 1) if c not in dirs]
    if not dirs or not rest:
        raise PreconditionError("cor4.4 needs some directions and some non-directions")
    sigma = Projection.coordinate_sum(g.rank, [[c] for c in rest] + [sorted(dirs)])
    direct: Optional[int] = None
    failures = []
    for i in range(len(b.generators) + 1):
        for box in ctx.engine.coarse_support(b, M, i).image(sigma).boxes:
            finite = [hi for hi in box.hi if hi is not None]
            if not finite:
                failures.append(f"H^{i}: box {box} is unbounded after summing the directions")
                continue
            t = min(finite) + 1
            direct = t if direct is None else max(direct, t)
    if failures:
        return Outcome("fail", tuple(failures))
    Msigma = regrade(M, sigma)
    _require_rplus(b, Msigma.grading)
    regraded, more = _vanishing_corner(b, Msigma, ctx.engine)
    if more or regraded != direct:
        return Outcome("fail", tuple(more) + (f"direct t={direct}, regraded t={regraded}",))
    return Outcome("pass", (f"t={direct}",))


@register("thm4.5", "every coarse component of H^i_{R_+}(M) is finite", "module")
def check_finite_components(ctx: CheckContext) -> Outcome:
    M = ctx.module()
    g = ctx.grading
    rplus = ideal_Rplus(g)
    failures = []
    for i in range(len(rplus.generators) + 1):
        witness = ctx.engine.infinite_component(rplus, M, i)
        if witness is not None:
            failures.append(f"H^{i}: infinite component at {format_degree(witness)}")
    return _outcome(failures, [f"R_+ = {rplus.format(g.names)}"])


# -- finiteness dimensions ----------------------------------------------------


@register("prop5.17", "annihilation by powers of R_m below f iff f <= g^P(m)", "ideal", "module", "m", "f")
def check_annihilation_equivalence(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    m, f = ctx.degree("m"), ctx.integer("f")
    q = support_pattern(m)
    left = all(ctx.engine.annihilation_exponent(b, M, i, m) is not None for i in range(f))
    geometric = geometric_gdim(b, M, q, ctx.engine).value
    right = f <= geometric
    routed = annihilation_gdim(b, M, q, ctx.engine)
    witnesses = [
        f"annihilated below {f}: {left}",
        f"g^{format_pattern(q)} = {format_findim(geometric)}",
    ]
    if left != right or routed != geometric:
        witnesses.append(f"annihilation route gives {format_findim(routed)}")
        return Outcome("fail", tuple(witnesses))
    return Outcome("pass", tuple(witnesses))


def _degree_ideal(g: GradingSpec, ms: Sequence[Tuple[int, ...]]) -> MonomialIdeal:
    gens = [mono for m in ms for mono in monomials_of_degree(g, m)]
    return MonomialIdeal.from_generators(gens, g.n)


@register("thm5.20", "inf of g^P(m) over T equals f^(sum of R_m R)", "ideal", "module", "ms")
def check_gdim_fdim(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    ms = ctx.degrees("ms")
    if not ms or any(len(m) != g.rank or any(v < 0 for v in m) or not any(m) for m in ms):
        raise PreconditionError("ms must list nonzero degrees of N_0^r separated by ';'")
    lowest = min(geometric_gdim(b, M, support_pattern(m), ctx.engine).value for m in ms)
    f = finiteness_dimension_f(_degree_ideal(g, ms), b, M, ctx.engine)
    witness = f"inf g = {format_findim(lowest)}, f = {format_findim(f)}"
    return Outcome("pass" if lowest == f else "fail", (witness,))


@register("cor5.21", "f^(R_+), f^c and f^R against g^{1..r}, min g^{j} and grade", "ideal", "module")
def check_finiteness_corollary(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    full = frozenset(range(1, g.rank + 1))
    failures, passes = [], []

    f_rplus = finiteness_dimension_f(ideal_Rplus(g), b, M, ctx.engine)
    g_full = geometric_gdim(b, M, full, ctx.engine).value
    (passes if f_rplus == g_full else failures).append(
        f"(i) f^R_+ = {format_findim(f_rplus)}, g^{format_pattern(full)} = {format_findim(g_full)}"
    )

    f_c = finiteness_dimension_f(ideal_cQ(g, full), b, M, ctx.engine)
    g_single = min(geometric_gdim(b, M, {c}, ctx.engine).value for c in full)
    infinite_from = first_infinite_support(b, M, ctx.engine)
    (passes if f_c == g_single == infinite_from else failures).append(
        f"(ii) f^c = {format_findim(f_c)}, min g^{{j}} = {format_findim(g_single)}, "
        f"first infinite support {format_findim(infinite_from)}"
    )

    if b.is_unit():
        passes.append("(iii) skipped: M = bM")
    else:
        f_unit = finiteness_dimension_f(MonomialIdeal.unit(g.n), b, M, ctx.engine)
        g_empty = geometric_gdim(b, M, (), ctx.engine).value
        depth = grade(b, M, ctx.engine)
        (passes if f_unit == g_empty == depth else failures).append(
            f"(iii) f^R = {format_findim(f_unit)}, g^{{}} = {format_findim(g_empty)}, "
            f"grade = {format_findim(depth)}"
        )
    return _outcome(failures, passes)


@register("rem5.16", "g^Q is invariant under shifting the module", "ideal", "module", "shift")
def check_shift_invariance(ctx: CheckContext) -> Outcome:
    b, M = ctx.ideal(), ctx.module()
    g = ctx.grading
    w = ctx.degree("shift")
    if len(w) != g.n:
        raise PreconditionError(f"shift must be a fine degree with {g.n} entries")
    Mw = M.shifted(w)
    failures, passes = [], []
    for size in range(g.rank + 1):
        for q in itertools.combinations(range(1, g.rank + 1), size):
            before = geometric_gdim(b, M, q, ctx.engine).value
            after = geometric_gdim(b, Mw, q, ctx.engine).value
            line = f"g^{format_pattern(q)}: {format_findim(before)} -> {format_findim(after)}"
            (passes if before == after else failures).append(line)
    return _outcome(failures, passes)


# -- entry point --------------------------------------------------------------


def verify(
    theorem: str,
    instance: Instance,
    params: Optional[Mapping[str, str]] = None,
    engine: Optional[CohomologyEngine] = None,
    task: str = "",
) -> Report:
    check = CHECKS.get(theorem.lower())
    if check is None:
        raise UsageError(f"unknown theorem id {theorem!r}; known: {', '.join(sorted(CHECKS))}")
    params = dict(params or {})
    unknown = sorted(set(params) - check.params)
    if unknown:
        raise UsageError(f"{check.theorem} does not accept parameters {unknown}")
    ctx = CheckContext(instance, params, engine or CohomologyEngine())
    try:
        outcome = check.run(ctx)
    except TheoremViolationError as exc:
        outcome = Outcome("fail", (exc.message,))
    except (PreconditionError, UndefinedInvariantError, UnsupportedInstanceError) as exc:
        # hypotheses of the statement not met by this task
        outcome = Outcome("inconclusive", (f"{type(exc).__name__}: {exc.message}",))
    report = Report(
        theorem=check.theorem,
        instance=instance.digest,
        task=task,
        status=outcome.status,
        witnesses=list(outcome.witnesses),
    )
    log = logger.info if report.passed else logger.warning
    log("theorem check", extra={"theorem": check.theorem, "task": task, "status": report.status})
    return report


def run_suite(instance: Instance, engine: Optional[CohomologyEngine] = None) -> List[Report]:
    """Every task of the instance, in declaration order."""
    engine = engine or CohomologyEngine()
    return [
        verify(decl.theorem, instance, decl.params, engine, task=name)
        for name, decl in instance.tasks.items()
    ]

"""
Command-line entry point.

    python app.py support instances/E1.inst --ideal bx --module S --index 1
    python app.py gdim instances/E1.inst --ideal bxy --module S
    python app.py verify --suite
    python app.py kunneth --index 4 --format svg

Results go to stdout, logs and errors to stderr. Exit codes: 0 success,
1 verification failure or engine inconsistency, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd
import structlog

from cli.render import RenderSpec, parse_window, render
from config.env_validation import validate_environment
from config.logging_config import setup_logging
from config.settings import Settings, get_settings
from engine.cohomology import CohomologyEngine
from instance_io.models import Instance
from instance_io.parser import load
from invariants.anchors import anchor_points, bass_number
from invariants.ends import end_of, q_bound
from invariants.finiteness import all_patterns, finiteness_dimension_g, finiteness_report, format_findim
from invariants.kunneth import example_supports, kunneth_gdims, kunneth_supports
from invariants.verify import CHECKS, Report, run_suite, verify
from lattice.degrees import Pattern, format_pattern
from lattice.regions import PointSet
from utils.errors import EngineError, UnsupportedInstanceError, UsageError

BUNDLED = Path(__file__).resolve().parent.parent / "instances"
FORMATS = ("ascii", "svg", "json")


# -- helpers ------------------------------------------------------------------


def _engine(settings: Settings) -> CohomologyEngine:
    return CohomologyEngine(max_workers=settings.MAX_WORKERS)


def _instance(path: str, args: argparse.Namespace, settings: Settings) -> Instance:
    instance = load(path, default_field=settings.FIELD)
    if getattr(args, "field", None):
        instance = instance.with_field(args.field)
    return instance


def _window(args: argparse.Namespace, settings: Settings):
    if args.window:
        return parse_window(args.window)
    return settings.default_window_bounds()


def _pattern(text: str) -> Pattern:
    """'1,2' -> {1,2}; 'none' is the empty pattern."""
    if text.strip().lower() in ("none", "{}", ""):
        return frozenset()
    try:
        return frozenset(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"pattern must be comma-separated colors, got {text!r}") from None


def _ints(text: str) -> List[int]:
    if not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _params(items: Sequence[str]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for item in items or ():
        key, eq, value = item.partition("=")
        if not eq or not key or not value:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key] = value
    return params


def _table(rows: Sequence[Sequence[str]], columns: Sequence[str]) -> str:
    frame = pd.DataFrame([list(r) for r in rows], columns=list(columns))
    return frame.to_string(index=False) + "\n"


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _out(text: str) -> None:
    sys.stdout.write(text)


def _tabular(args: argparse.Namespace, rows, columns, payload) -> None:
    _out(_json(payload) if args.format == "json" else _table(rows, columns))


# -- commands -----------------------------------------------------------------


def cmd_support(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    b, M = instance.ideal(args.ideal), instance.module(args.module)
    engine = _engine(settings)
    region = engine.global_support(b, M, args.index)
    coarse = engine.coarse_support(b, M, args.index).normalized()
    if args.format == "json":
        _out(_json({
            "ideal": args.ideal,
            "module": args.module,
            "index": args.index,
            "fine": region.to_json(),
            "coarse": coarse.to_json(),
        }))
        return 0
    lo, hi = _window(args, settings)
    spec = RenderSpec.square(instance.grading.rank, lo, hi)
    title = f"S(H^{args.index}_{args.ideal}({args.module}))"
    _out(render(coarse, spec, args.format, title))
    return 0


def cmd_end(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    b, M = instance.ideal(args.ideal), instance.module(args.module)
    engine = _engine(settings)
    indices = [args.index] if args.index is not None else range(len(b.generators) + 1)
    ends = [end_of(b, M, j, engine) for j in indices]
    rows = [(e.index, format_pattern(e.directions), str(e.points)) for e in ends]
    _tabular(args, rows, ("index", "directions", "end"), [e.to_json() for e in ends])
    return 0


def cmd_anchors(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    p, M = instance.prime(args.prime), instance.module(args.module)
    engine = _engine(settings)
    levels = [args.index] if args.index is not None else range(len(p.variables) + 1)
    rows, payload = [], []
    for i in levels:
        anchors = anchor_points(p, M, i, engine)
        try:
            bass = str(bass_number(p, M, i, engine))
        except UnsupportedInstanceError:
            bass = "-"
        rows.append((i, format_pattern(anchors.directions), str(anchors.points), bass))
        payload.append(dict(anchors.to_json(), bass=None if bass == "-" else int(bass)))
    _tabular(args, rows, ("level", "directions", "anchors", "bass"), payload)
    return 0


def cmd_gdim(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    b, M = instance.ideal(args.ideal), instance.module(args.module)
    engine = _engine(settings)
    patterns = [_pattern(q) for q in args.q] if args.q else all_patterns(instance.grading.rank)
    results = [finiteness_dimension_g(b, M, q, engine) for q in patterns]
    rows = [
        (format_pattern(r.q), format_findim(r.value), str(r.witness) if r.witness else "-")
        for r in results
    ]
    _tabular(args, rows, ("Q", "g", "escaping box"), [r.to_json() for r in results])
    return 0


def cmd_fdim(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    b, M = instance.ideal(args.ideal), instance.module(args.module)
    names = args.test or sorted(instance.ideals)
    tests = {name: instance.ideal(name) for name in names}
    report = finiteness_report(b, M, tests, _engine(settings))
    rows = report.rows()
    payload = [{"invariant": k, "argument": a, "value": v} for k, a, v in rows]
    _tabular(args, rows, ("invariant", "argument", "value"), payload)
    return 0


def cmd_bnd(args: argparse.Namespace, settings: Settings) -> int:
    instance = _instance(args.instance, args, settings)
    M = instance.module(args.module)
    engine = _engine(settings)
    if args.q:
        patterns = [_pattern(q) for q in args.q]
    else:
        patterns = [q for q in all_patterns(instance.grading.rank) if q]
    bounds = [(q, q_bound(M, q, engine)) for q in patterns]
    rows = [(format_pattern(q), str(points)) for q, points in bounds]
    payload = [{"q": sorted(q), "bound": points.to_json()} for q, points in bounds]
    _tabular(args, rows, ("Q", "bnd"), payload)
    return 0


def _bundled_instances() -> List[str]:
    return [str(p) for p in sorted(BUNDLED.glob("*.inst"))]


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    paths = list(args.instances)
    if args.theorem:
        if len(paths) != 1:
            raise UsageError("--theorem needs exactly one instance")
        instance = _instance(paths[0], args, settings)
        reports = [verify(args.theorem, instance, _params(args.param), _engine(settings))]
    else:
        if args.param:
            raise UsageError("--param only applies together with --theorem")
        if not paths:
            if not args.suite:
                raise UsageError("give instance files, --suite, or --theorem")
            paths = _bundled_instances()
        reports: List[Report] = []
        engine = _engine(settings)
        for path in paths:
            reports += run_suite(_instance(path, args, settings), engine)

    if args.format == "json":
        _out(_json([r.model_dump() for r in reports]))
    else:
        _out("".join(line + "\n" for r in reports for line in r.lines()))
        passed = sum(r.passed for r in reports)
        _out(f"{passed}/{len(reports)} passed\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_kunneth(args: argparse.Namespace, settings: Settings) -> int:
    supp_a, supp_b = example_supports(args.w, args.v, _ints(args.W), _ints(args.V))
    if args.gdim:
        values = kunneth_gdims(supp_a, supp_b)
        rows = [(format_pattern(q), format_findim(value)) for q, value in values]
        payload = [{"q": sorted(q), "g": format_findim(value)} for q, value in values]
        _out(_json(payload) if args.format == "json" else _table(rows, ("Q", "g")))
        return 0
    if args.index is None:
        raise UsageError("kunneth needs --index or --gdim")
    support = kunneth_supports(supp_a, supp_b).get(args.index, PointSet.empty(2))
    if args.format == "json":
        _out(_json({"index": args.index, "support": support.to_json()}))
        return 0
    lo, hi = _window(args, settings)
    title = f"S(H^{args.index}_R+(A#B))"
    _out(render(support, RenderSpec.square(2, lo, hi), args.format, title))
    return 0


# -- parser -------------------------------------------------------------------


def _common(sub: argparse.ArgumentParser, instance: bool = True, formats=FORMATS) -> None:
    if instance:
        sub.add_argument("instance", help="Path to an instance file")
    sub.add_argument("--field", default=None, help="Coefficient field: QQ or GF(p) (default: instance or FIELD)")
    sub.add_argument("--format", choices=formats, default=formats[0], help=f"Output format (default: {formats[0]})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgcoh",
        description="Multigraded local cohomology and Ext over monomial data.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("support", help="Render the coarse support of H^i_b(M)")
    _common(sub)
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--module", required=True)
    sub.add_argument("--index", "-i", type=int, required=True)
    sub.add_argument("--window", default=None, help="Coarse window lo:hi per axis (default: DEFAULT_WINDOW)")
    sub.set_defaults(handler=cmd_support)

    sub = subs.add_parser("end", help="Ends of H^j_b(M)")
    _common(sub, formats=("ascii", "json"))
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--module", required=True)
    sub.add_argument("--index", "-i", type=int, default=None)
    sub.set_defaults(handler=cmd_end)

    sub = subs.add_parser("anchors", help="Anchor points and Bass numbers at a monomial prime")
    _common(sub, formats=("ascii", "json"))
    sub.add_argument("--prime", required=True)
    sub.add_argument("--module", required=True)
    sub.add_argument("--index", "-i", type=int, default=None)
    sub.set_defaults(handler=cmd_anchors)

    sub = subs.add_parser("gdim", help="Q-finiteness dimensions g^Q_b(M)")
    _common(sub, formats=("ascii", "json"))
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--module", required=True)
    sub.add_argument("--q", action="append", default=[], help="Pattern such as 1,2 or none; repeatable")
    sub.set_defaults(handler=cmd_gdim)

    sub = subs.add_parser("fdim", help="Finiteness report: grade, g^Q, f^a and Q-bounds")
    _common(sub, formats=("ascii", "json"))
    sub.add_argument("--ideal", required=True)
    sub.add_argument("--module", required=True)
    sub.add_argument("--test", action="append", default=[], help="Test ideal name for f^a; repeatable")
    sub.set_defaults(handler=cmd_fdim)

    sub = subs.add_parser("bnd", help="Q-bounds bnd^Q(M)")
    _common(sub, formats=("ascii", "json"))
    sub.add_argument("--module", required=True)
    sub.add_argument("--q", action="append", default=[])
    sub.set_defaults(handler=cmd_bnd)

    sub = subs.add_parser("verify", help="Run theorem checks")
    sub.add_argument("instances", nargs="*", help="Instance files whose [tasks] are run")
    sub.add_argument("--field", default=None)
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--suite", action="store_true", help="Run every bundled instance")
    sub.add_argument("--theorem", default=None, help=f"One of: {', '.join(sorted(CHECKS))}")
    sub.add_argument("--param", action="append", default=[], help="key=value for --theorem")
    sub.set_defaults(handler=cmd_verify)

    sub = subs.add_parser("kunneth", help="Supports of H^i_R+(A#B) from 1-dimensional supports")
    _common(sub, instance=False)
    sub.add_argument("--w", type=int, default=5, help="dim A (default: 5)")
    sub.add_argument("--v", type=int, default=5, help="dim B (default: 5)")
    sub.add_argument("--W", default="2", help="Indices where H^i(A) is k in degree 0 (default: 2)")
    sub.add_argument("--V", default="3", help="Indices where H^i(B) is k in degree 0 (default: 3)")
    sub.add_argument("--index", "-i", type=int, default=None)
    sub.add_argument("--window", default=None)
    sub.add_argument("--gdim", action="store_true", help="Print g^Q for every Q instead of a diagram")
    sub.set_defaults(handler=cmd_kunneth)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings.LOG_LEVEL, settings.ENV)
    log = structlog.get_logger().bind(component="cli", command=args.command)

    status = validate_environment(settings)
    for warning in status.warnings:
        log.warning("environment warning", detail=warning)
    if not status.is_valid:
        error = UsageError("invalid environment", payload={"missing": status.missing})
        sys.stderr.write(json.dumps(error.to_dict(), sort_keys=True) + "\n")
        return error.exit_code

    try:
        return args.handler(args, settings)
    except EngineError as exc:
        log.warning("command failed", error=type(exc).__name__, code=exc.exit_code)
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

import pytest

from instance_io.parser import load, load_text
from invariants.verify import CHECKS, MONOMIAL_NOTE, Check, Outcome, Report, run_suite, verify
from utils.errors import TheoremViolationError, UndefinedInvariantError, UsageError


def test_report_lines_are_sorted():
    """Witnesses print in lexicographic order after the headline"""
    report = Report(theorem="thm4.5", instance="abc123", task="t", status="fail", witnesses=["b", "a"])
    assert report.lines() == ["t thm4.5 abc123 fail", "  a", "  b", f"  note: {MONOMIAL_NOTE}"]
    assert not report.passed


def test_anchor_lifting_passes(e1, engine):
    """anch^1((x),S) = {-1} lifts to anch^2((x,y),S) = {(-1,-1)}"""
    report = verify("thm2.11", e1, {"module": "S"}, engine)
    assert report.passed
    assert report.instance == e1.digest
    assert report.note == MONOMIAL_NOTE


def test_vanishing_corner(e1, engine):
    """H^i_(x,y)(S) vanishes from (0,0) upward"""
    report = verify("thm4.2", e1, {"ideal": "bxy", "module": "S"}, engine)
    assert report.passed
    assert "t=0" in report.witnesses


def test_theorem_ids_are_case_insensitive(e1, engine):
    assert verify("THM4.5", e1, {"module": "S"}, engine).theorem == "thm4.5"


def test_unknown_theorem_is_a_usage_error(e1):
    """Unknown ids list the known ones"""
    with pytest.raises(UsageError) as excinfo:
        verify("thm9.9", e1, {})
    assert "thm2.10" in excinfo.value.message


def test_unaccepted_parameter_is_a_usage_error(e1):
    with pytest.raises(UsageError):
        verify("thm4.5", e1, {"module": "S", "ideal": "bx"})


def test_missing_parameter_is_a_usage_error(e1):
    with pytest.raises(UsageError):
        verify("thm4.5", e1, {})


def test_malformed_degree_parameter(e1):
    """m must be written like 1,0"""
    with pytest.raises(UsageError):
        verify("prop5.17", e1, {"ideal": "by", "module": "Sx", "m": "1,a", "f": "2"})


def test_violation_becomes_a_failed_report(e1, mocker):
    """A checker raising a theorem violation yields a fail report, not a crash"""

    def disagree(ctx):
        raise TheoremViolationError("sides differ")

    mocker.patch.dict(CHECKS, {"thm4.5": Check("thm4.5", frozenset({"module"}), disagree, "forced")})
    report = verify("thm4.5", e1, {"module": "S"})
    assert report.status == "fail"
    assert report.witnesses == ["sides differ"]


def test_inconclusive_outcome_is_not_a_pass(e1, mocker):
    mocker.patch.dict(
        CHECKS,
        {"thm4.5": Check("thm4.5", frozenset({"module"}), lambda ctx: Outcome("inconclusive"), "forced")},
    )
    report = verify("thm4.5", e1, {"module": "S"})
    assert report.status == "inconclusive"
    assert not report.passed


@pytest.mark.slow
def test_bundled_example_passes(e1, engine):
    """Every task of E1 passes"""
    reports = run_suite(e1, engine)
    assert [r.task for r in reports] == list(e1.tasks)
    assert all(r.passed for r in reports), [line for r in reports for line in r.lines()]


@pytest.mark.slow
def test_acceptance_suite_passes(suite_instance, instance_path, engine):
    """Every registered check passes on the acceptance suite and the three-variable example"""
    reports = run_suite(suite_instance, engine) + run_suite(load(instance_path("E3.inst")), engine)
    assert {r.theorem for r in reports} == set(CHECKS)
    assert all(r.passed for r in reports), [line for r in reports for line in r.lines()]


def test_unmet_hypotheses_are_inconclusive(e1, engine):
    """(x,y) has no non-direction color, so cor4.4 cannot be applied"""
    report = verify("cor4.4", e1, {"ideal": "bxy", "module": "S"}, engine)
    assert report.status == "inconclusive"
    assert report.witnesses[0].startswith("PreconditionError")


def test_suite_survives_an_undefined_invariant(mocker):
    """One task raising does not stop the remaining tasks"""
    instance = load_text(
        "[ring]\nvariables = x, y\ncolors = 1, 2\n"
        "[ideals]\nzero = 0\n[modules]\nS = [0,0]/zero\n"
        "[tasks]\nfirst = thm4.5 module=S\nsecond = thm4.5 module=S\n"
    )

    def undefined(ctx):
        raise UndefinedInvariantError("we have not defined the end")

    mocker.patch.dict(CHECKS, {"thm4.5": Check("thm4.5", frozenset({"module"}), undefined, "forced")})
    reports = run_suite(instance)
    assert [(r.task, r.status) for r in reports] == [("first", "inconclusive"), ("second", "inconclusive")]

"""
Instance data: the declared (textual) form and the resolved algebraic form.

The declared models keep exactly what the file says, so serialization is a
faithful inverse of parsing. ``resolve`` turns them into gradings, ideals,
modules and primes, checking every cross reference.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from algebra.grading import GradingSpec
from algebra.modules import GradedModule, Summand
from algebra.monomials import MonomialIdeal, MonomialPrime
from utils.errors import InstanceParseError, UsageError
from utils.linalg import FieldSpec, parse_field


class RingDecl(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variables: List[str] = Field(..., min_length=1)
    colors: List[int]
    rank: Optional[int] = None
    field: Optional[str] = None


class SummandDecl(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shift: List[int]
    ideal: str


class TaskDecl(BaseModel):
    """One theorem check: ``name = <theorem> key=value ...``."""

    model_config = ConfigDict(extra="forbid")

    theorem: str
    params: Dict[str, str] = Field(default_factory=dict)


class InstanceFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ring: RingDecl
    ideals: Dict[str, List[List[int]]] = Field(default_factory=dict)
    modules: Dict[str, List[SummandDecl]] = Field(default_factory=dict)
    primes: Dict[str, List[str]] = Field(default_factory=dict)
    tasks: Dict[str, TaskDecl] = Field(default_factory=dict)
    # declaration lines, for error locations after parsing
    lines: Dict[str, int] = Field(default_factory=dict, exclude=True)


@dataclass
class Instance:
    """Resolved instance: every name maps to an algebraic object."""

    name: str
    grading: GradingSpec
    ideals: Dict[str, MonomialIdeal]
    modules: Dict[str, GradedModule]
    primes: Dict[str, MonomialPrime]
    tasks: Dict[str, TaskDecl]
    source: InstanceFile
    digest: str = field(default="")

    def ideal(self, name: str) -> MonomialIdeal:
        return _lookup(self.ideals, name, "ideal")

    def module(self, name: str) -> GradedModule:
        return _lookup(self.modules, name, "module")

    def prime(self, name: str) -> MonomialPrime:
        return _lookup(self.primes, name, "prime")

    def with_field(self, tag: str) -> "Instance":
        """The same instance over another coefficient field."""
        spec = parse_field(tag)
        grading = self.grading.with_field(spec)
        return Instance(
            self.name,
            grading,
            dict(self.ideals),
            {k: m.with_grading(grading) for k, m in self.modules.items()},
            dict(self.primes),
            dict(self.tasks),
            self.source,
            self.digest,
        )


def _lookup(table: Dict, name: str, kind: str):
    try:
        return table[name]
    except KeyError:
        known = ", ".join(table) or "none"
        raise UsageError(f"unknown {kind} {name!r}; declared: {known}") from None


def instance_digest(text: str) -> str:
    """Short content hash used to identify an instance in reports."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def resolve(decl: InstanceFile, name: str = "instance", default_field: str = "QQ") -> Instance:
    """Build the algebraic objects of a declared instance, checking every reference."""
    ring = decl.ring

    def fail(message: str, key: str = "") -> InstanceParseError:
        return InstanceParseError(message, line=decl.lines.get(key, 0), column=1)

    if len(ring.colors) != len(ring.variables):
        raise fail(
            f"{len(ring.variables)} variables but {len(ring.colors)} colors", "ring.colors"
        )
    rank = ring.rank or max(ring.colors)
    bad = [c for c in ring.colors if not 1 <= c <= rank]
    if bad:
        raise fail(f"color {bad[0]} outside 1..{rank}", "ring.colors")
    try:
        spec: FieldSpec = parse_field(ring.field or default_field)
    except UsageError as exc:
        raise fail(exc.message, "ring.field") from None
    grading = GradingSpec(tuple(ring.variables), tuple(ring.colors), rank, spec)
    n = grading.n

    ideals = {}
    for key, gens in decl.ideals.items():
        if any(len(g) != n or any(e < 0 for e in g) for g in gens):
            raise fail(f"ideal {key!r} has a malformed generator", f"ideals.{key}")
        ideals[key] = MonomialIdeal.from_generators(gens, n)

    modules = {}
    for key, summands in decl.modules.items():
        parts = []
        for s in summands:
            if s.ideal not in ideals:
                raise fail(f"module {key!r} refers to unknown ideal {s.ideal!r}", f"modules.{key}")
            if len(s.shift) != n:
                raise fail(f"module {key!r} has a shift of length {len(s.shift)}", f"modules.{key}")
            parts.append(Summand(tuple(s.shift), ideals[s.ideal]))
        modules[key] = GradedModule(grading, tuple(parts))

    primes = {}
    for key, names in decl.primes.items():
        unknown = [v for v in names if v not in ring.variables]
        if unknown:
            raise fail(f"prime {key!r} uses unknown variable {unknown[0]!r}", f"primes.{key}")
        primes[key] = MonomialPrime(n, frozenset(ring.variables.index(v) for v in names))

    return Instance(name, grading, ideals, modules, primes, dict(decl.tasks), decl)

"""Canonical text form of a declared instance."""

from __future__ import annotations

from typing import List, Sequence

from instance_io.models import InstanceFile


def format_monomial(exps: Sequence[int], variables: Sequence[str]) -> str:
    factors = [
        name if e == 1 else f"{name}^{e}" for name, e in zip(variables, exps) if e
    ]
    return "*".join(factors) or "1"


def _ideal(gens: Sequence[Sequence[int]], variables: Sequence[str]) -> str:
    if not gens:
        return "0"
    return ", ".join(format_monomial(g, variables) for g in gens)


def serialize(decl: InstanceFile) -> str:
    """Sections in fixed order, entries in declaration order, LF line endings."""
    ring = decl.ring
    out: List[str] = ["[ring]"]
    out.append(f"variables = {', '.join(ring.variables)}")
    out.append(f"colors = {', '.join(str(c) for c in ring.colors)}")
    if ring.rank is not None:
        out.append(f"rank = {ring.rank}")
    if ring.field is not None:
        out.append(f"field = {ring.field}")

    if decl.ideals:
        out += ["", "[ideals]"]
        out += [f"{k} = {_ideal(g, ring.variables)}" for k, g in decl.ideals.items()]
    if decl.modules:
        out += ["", "[modules]"]
        for k, summands in decl.modules.items():
            body = " + ".join(
                f"[{','.join(str(v) for v in s.shift)}]/{s.ideal}" for s in summands
            )
            out.append(f"{k} = {body or '0'}")
    if decl.primes:
        out += ["", "[primes]"]
        out += [f"{k} = {', '.join(names) or '0'}" for k, names in decl.primes.items()]
    if decl.tasks:
        out += ["", "[tasks]"]
        for k, task in decl.tasks.items():
            words = [task.theorem] + [f"{key}={value}" for key, value in task.params.items()]
            out.append(f"{k} = {' '.join(words)}")
    return "\n".join(out) + "\n"

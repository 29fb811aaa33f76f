"""
Parser for instance files.

    [ring]
    variables = x, y
    colors = 1, 2

    [ideals]
    b = x^2*y, y^3

    [modules]
    M = [0,0]/zero + [1,0]/b

    [primes]
    p = x

    [tasks]
    lift = thm2.11 module=M

Blank lines and ``#`` comments are ignored. See docs/INSTANCE_FORMAT.md.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from instance_io.models import (
    Instance,
    InstanceFile,
    RingDecl,
    SummandDecl,
    TaskDecl,
    instance_digest,
    resolve,
)
from instance_io.serializer import serialize
from invariants.verify import CHECKS
from utils.errors import InstanceParseError

logger = logging.getLogger(__name__)

SECTIONS = ("ring", "ideals", "modules", "primes", "tasks")
RING_KEYS = ("variables", "colors", "rank", "field")

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_HEADER = re.compile(r"^\[([^\]]*)\]\s*$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")
_SUMMAND = re.compile(r"^\[([^\]]*)\]\s*/\s*([A-Za-z_][A-Za-z0-9_]*)$")
_THEOREM = re.compile(r"^[a-z]+\d+(\.\d+)?$")


@dataclass(frozen=True)
class _Entry:
    key: str
    value: str
    line: int
    column: int


def _split_entries(text: str) -> Dict[str, List[_Entry]]:
    sections: Dict[str, List[_Entry]] = {}
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        header = _HEADER.match(stripped)
        if header:
            name = header.group(1).strip()
            if name not in SECTIONS:
                raise InstanceParseError(f"unknown section [{name}]", number, indent + 1)
            if name in sections:
                raise InstanceParseError(f"section [{name}] declared twice", number, indent + 1)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise InstanceParseError("entry outside of any section", number, indent + 1)
        key, eq, value = stripped.partition("=")
        if not eq:
            raise InstanceParseError("expected 'name = value'", number, indent + 1)
        key = key.strip()
        if not _NAME.match(key):
            raise InstanceParseError(f"invalid name {key!r}", number, indent + 1)
        if any(e.key == key for e in sections[current]):
            raise InstanceParseError(f"{key!r} declared twice in [{current}]", number, indent + 1)
        after = stripped[stripped.index("=") + 1 :]
        value_column = indent + stripped.index("=") + 2 + len(after) - len(after.lstrip())
        sections[current].append(_Entry(key, value.strip(), number, value_column))
    return sections


def _split_list(entry: _Entry) -> List[str]:
    parts = [p.strip() for p in entry.value.split(",")]
    if not entry.value or any(not p for p in parts):
        raise InstanceParseError("empty item in comma-separated list", entry.line, entry.column)
    return parts


def _int(text: str, entry: _Entry) -> int:
    try:
        return int(text)
    except ValueError:
        raise InstanceParseError(f"expected an integer, got {text!r}", entry.line, entry.column) from None


def _parse_ring(entries: List[_Entry]) -> Tuple[RingDecl, Dict[str, int]]:
    found = {}
    for e in entries:
        if e.key not in RING_KEYS:
            raise InstanceParseError(f"unknown key {e.key!r} in [ring]", e.line, 1)
        found[e.key] = e
    for required in ("variables", "colors"):
        if required not in found:
            line = entries[0].line if entries else 0
            raise InstanceParseError(f"[ring] needs {required!r}", line, 1)
    variables = _split_list(found["variables"])
    for v in variables:
        if not _NAME.match(v):
            raise InstanceParseError(f"invalid variable name {v!r}", found["variables"].line, found["variables"].column)
    if len(set(variables)) != len(variables):
        raise InstanceParseError("duplicate variable names", found["variables"].line, found["variables"].column)
    colors_entry = found["colors"]
    colors = [_int(c, colors_entry) for c in _split_list(colors_entry)]
    rank = _int(found["rank"].value, found["rank"]) if "rank" in found else None
    limit = rank or max(colors)
    for c in colors:
        if not 1 <= c <= limit:
            raise InstanceParseError(f"color {c} outside 1..{limit}", colors_entry.line, colors_entry.column)
    field = found["field"].value if "field" in found else None
    lines = {f"ring.{k}": e.line for k, e in found.items()}
    return RingDecl(variables=variables, colors=colors, rank=rank, field=field), lines


def parse_monomial(text: str, variables: List[str], entry: _Entry) -> List[int]:
    exps = [0] * len(variables)
    if text == "1":
        return exps
    for factor in text.split("*"):
        match = _FACTOR.match(factor.strip())
        if not match:
            raise InstanceParseError(f"malformed monomial factor {factor!r}", entry.line, entry.column)
        name, power = match.group(1), match.group(2)
        if name not in variables:
            raise InstanceParseError(f"unknown variable {name!r}", entry.line, entry.column)
        exps[variables.index(name)] += int(power) if power else 1
    return exps


def _parse_ideal(entry: _Entry, variables: List[str]) -> List[List[int]]:
    if entry.value == "0":
        return []
    return [parse_monomial(m, variables, entry) for m in _split_list(entry)]


def _parse_module(entry: _Entry, n: int, ideals: Dict[str, List[List[int]]]) -> List[SummandDecl]:
    if entry.value == "0":
        return []
    summands = []
    for part in entry.value.split("+"):
        match = _SUMMAND.match(part.strip())
        if not match:
            raise InstanceParseError(f"expected '[shift]/ideal', got {part.strip()!r}", entry.line, entry.column)
        shift = [_int(v.strip(), entry) for v in match.group(1).split(",")]
        if len(shift) != n:
            raise InstanceParseError(f"shift {shift} needs {n} entries", entry.line, entry.column)
        if match.group(2) not in ideals:
            raise InstanceParseError(f"unknown ideal {match.group(2)!r}", entry.line, entry.column)
        summands.append(SummandDecl(shift=shift, ideal=match.group(2)))
    return summands


def _parse_prime(entry: _Entry, variables: List[str]) -> List[str]:
    if entry.value == "0":
        return []
    names = _split_list(entry)
    for v in names:
        if v not in variables:
            raise InstanceParseError(f"unknown variable {v!r}", entry.line, entry.column)
    if len(set(names)) != len(names):
        raise InstanceParseError("repeated variable in prime", entry.line, entry.column)
    return names


def _parse_task(entry: _Entry) -> TaskDecl:
    words = entry.value.split()
    if not words:
        raise InstanceParseError("empty task", entry.line, entry.column)
    theorem = words[0]
    if not _THEOREM.match(theorem) or theorem not in CHECKS:
        raise InstanceParseError(f"unknown theorem id {theorem!r}", entry.line, entry.column)
    params = {}
    for word in words[1:]:
        key, eq, value = word.partition("=")
        if not eq or not value:
            raise InstanceParseError(f"expected key=value, got {word!r}", entry.line, entry.column)
        if key not in CHECKS[theorem].params:
            raise InstanceParseError(f"{theorem} does not accept {key!r}", entry.line, entry.column)
        if key in params:
            raise InstanceParseError(f"parameter {key!r} given twice", entry.line, entry.column)
        params[key] = value
    return TaskDecl(theorem=theorem, params=params)


def parse(text: str) -> InstanceFile:
    """Parse instance text into its declared form."""
    sections = _split_entries(text)
    if "ring" not in sections:
        raise InstanceParseError("missing [ring] section", 1, 1)
    ring, lines = _parse_ring(sections["ring"])
    variables = ring.variables

    ideals = {}
    for e in sections.get("ideals", []):
        ideals[e.key] = _parse_ideal(e, variables)
        lines[f"ideals.{e.key}"] = e.line
    modules = {}
    for e in sections.get("modules", []):
        modules[e.key] = _parse_module(e, len(variables), ideals)
        lines[f"modules.{e.key}"] = e.line
    primes = {}
    for e in sections.get("primes", []):
        primes[e.key] = _parse_prime(e, variables)
        lines[f"primes.{e.key}"] = e.line
    tasks = {}
    for e in sections.get("tasks", []):
        tasks[e.key] = _parse_task(e)
        lines[f"tasks.{e.key}"] = e.line
        _check_task_refs(tasks[e.key], e, ideals, modules, primes)

    try:
        return InstanceFile(ring=ring, ideals=ideals, modules=modules, primes=primes, tasks=tasks, lines=lines)
    except ValidationError as exc:
        raise InstanceParseError(f"invalid instance: {exc.errors()[0]['msg']}", 1, 1) from None


_REFERENCE_KINDS = {"ideal": "ideals", "module": "modules", "prime": "primes", "over": "primes"}


def _check_task_refs(task: TaskDecl, entry: _Entry, ideals, modules, primes) -> None:
    tables = {"ideals": ideals, "modules": modules, "primes": primes}
    for key, value in task.params.items():
        kind = _REFERENCE_KINDS.get(key)
        if kind and value not in tables[kind]:
            raise InstanceParseError(f"{key}={value} refers to no declared {kind[:-1]}", entry.line, entry.column)


def load_text(text: str, name: str = "instance", default_field: str = "QQ") -> Instance:
    decl = parse(text)
    instance = resolve(decl, name, default_field)
    instance.digest = instance_digest(serialize(decl))
    return instance


def load(path: str, default_field: str = "QQ") -> Instance:
    """Read and resolve an instance file (UTF-8)."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc.strerror}", 0, 0) from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = raw.count(b"\n", 0, exc.start) + 1
        column = exc.start - (raw.rfind(b"\n", 0, exc.start) + 1) + 1
        raise InstanceParseError(
            f"{path} is not UTF-8: byte 0x{raw[exc.start]:02x}", line, column
        ) from None
    logger.debug("loading instance", extra={"path": path})
    return load_text(text, name=path, default_field=default_field)

import pytest

from instance_io.parser import load, load_text, parse
from instance_io.serializer import format_monomial, serialize
from utils.errors import InstanceParseError, UsageError

RING = "[ring]\nvariables = x, y\ncolors = 1, 2\n"

MESSY = """\
# two summands over k[x,y]
[ring]
variables = x ,y
colors = 1,2

[ideals]
zero = 0
b = y*x^2 , y^3   # staircase
[modules]
M = [0,0]/zero + [1,-1] / b
[primes]
p = x
[tasks]
t = thm4.5 module=M
"""

CANONICAL = """\
[ring]
variables = x, y
colors = 1, 2

[ideals]
zero = 0
b = x^2*y, y^3

[modules]
M = [0,0]/zero + [1,-1]/b

[primes]
p = x

[tasks]
t = thm4.5 module=M
"""


def parse_error(text):
    with pytest.raises(InstanceParseError) as excinfo:
        load_text(text)
    return excinfo.value


def test_serialize_is_canonical():
    """Whitespace, comments and factor order do not survive serialization"""
    assert serialize(parse(MESSY)) == CANONICAL
    assert serialize(parse(CANONICAL)) == CANONICAL


def test_digest_ignores_layout():
    """The instance hash is taken over the canonical form"""
    assert load_text(MESSY).digest == load_text(CANONICAL).digest
    assert len(load_text(CANONICAL).digest) == 12
    assert load_text(CANONICAL.replace("colors = 1, 2", "colors = 1, 1")).digest != load_text(CANONICAL).digest


def test_resolved_objects(e1):
    """Names resolve to gradings, ideals, modules and primes"""
    assert e1.grading.colors == (1, 2)
    assert e1.ideal("mixed").generators == ((1, 2), (2, 0))
    twisted = e1.module("twisted")
    assert [s.shift for s in twisted.summands] == [(0, 0), (1, 1)]
    assert e1.prime("m").is_maximal()
    assert list(e1.tasks)[0] == "anchors_px"


def test_unknown_names_are_usage_errors(e1):
    with pytest.raises(UsageError) as excinfo:
        e1.module("nope")
    assert "twisted" in excinfo.value.message


def test_field_override(e1):
    """with_field swaps the coefficient field everywhere"""
    gf2 = e1.with_field("GF(2)")
    assert gf2.grading.field.characteristic == 2
    assert gf2.module("S").grading.field.characteristic == 2
    assert e1.grading.field.characteristic == 0


def test_default_field():
    """Files without a field line fall back to the given default"""
    instance = load_text(RING, default_field="GF(3)")
    assert instance.grading.field.characteristic == 3


def test_unknown_section():
    error = parse_error(RING + "[rings]\n")
    assert (error.line, error.column) == (4, 1)
    assert "unknown section [rings]" in error.message


def test_unknown_variable_points_at_the_value():
    """Columns are 1-based and point at the start of the value"""
    error = parse_error(RING + "[ideals]\nb = x*z\n")
    assert (error.line, error.column) == (5, 5)
    assert "unknown variable 'z'" in error.message


@pytest.mark.parametrize(
    "tail,fragment",
    [
        ("[modules]\nM = [0,0]/nope\n", "unknown ideal 'nope'"),
        ("[modules]\nM = [0]/zero\n", "needs 2 entries"),
        ("[tasks]\nt = thm9.9 module=M\n", "unknown theorem id"),
        ("[tasks]\nt = thm4.5 ideal=b\n", "does not accept 'ideal'"),
        ("[tasks]\nt = thm4.5 module=N\n", "refers to no declared module"),
        ("[primes]\np = x, x\n", "repeated variable"),
        ("b = x^\n", "malformed monomial factor"),
    ],
)
def test_malformed_entries(tail, fragment):
    error = parse_error(RING + "[ideals]\nzero = 0\n" + tail)
    assert fragment in error.message
    assert error.line >= 4


def test_entry_outside_a_section():
    error = parse_error("x = 1\n" + RING)
    assert (error.line, error.column) == (1, 1)


def test_colors_must_match_variables():
    """Resolution errors point at the offending declaration"""
    error = parse_error("[ring]\nvariables = x, y\ncolors = 1\n")
    assert error.line == 3
    assert "2 variables but 1 colors" in error.message


def test_bad_field_tag():
    error = parse_error(RING + "field = GF(4)\n")
    assert error.line == 4


def test_parse_error_payload():
    """Errors serialize with their location and exit code 2"""
    error = parse_error(RING + "[rings]\n")
    payload = error.to_dict()
    assert payload["code"] == 2
    assert payload["error"] == "InstanceParseError"
    assert (payload["line"], payload["column"]) == (4, 1)


def test_missing_file(tmp_path):
    with pytest.raises(InstanceParseError) as excinfo:
        load(str(tmp_path / "absent.inst"))
    assert "cannot read" in excinfo.value.message


def test_load_from_disk(tmp_path):
    path = tmp_path / "small.inst"
    path.write_text(CANONICAL, encoding="utf-8")
    instance = load(str(path))
    assert instance.name == str(path)
    assert instance.digest == load_text(CANONICAL).digest


def test_format_monomial():
    assert format_monomial((2, 0, 1), ("x", "y", "z")) == "x^2*z"
    assert format_monomial((0, 0), ("x", "y")) == "1"


def test_non_utf8_file_is_a_parse_error(tmp_path):
    """Undecodable bytes are reported at their line and column"""
    path = tmp_path / "latin.inst"
    path.write_bytes(b"[ring]\nvariables = x\xff\n")
    with pytest.raises(InstanceParseError) as excinfo:
        load(str(path))
    assert (excinfo.value.line, excinfo.value.column) == (2, 14)
    assert "not UTF-8" in excinfo.value.message

import json

import pytest

from cli.main import main
from cli.render import RenderSpec, parse_window, render, render_svg
from config.env_validation import EnvironmentStatus
from lattice.regions import PointSet
from utils.errors import UsageError


def last_error(captured):
    """The JSON error document is the final stderr line"""
    return json.loads(captured.err.strip().splitlines()[-1])


def grid_rows(text):
    return [line for line in text.splitlines() if " | " in line]


# -- rendering -----------------------------------------------------------------


def test_parse_window():
    assert parse_window("-5:4") == (-5, 4)
    for bad in ("5", "a:b", "3:1"):
        with pytest.raises(UsageError):
            parse_window(bad)


def test_render_single_point():
    """The origin drawn alone in a 2D window"""
    spec = RenderSpec.square(2, -1, 1)
    text = render(PointSet.of_points([(0, 0)], 2), spec, "ascii")
    assert grid_rows(text) == ["   1 | . . .", "   0 | . # .", "  -1 | . . ."]


def test_render_rank_one():
    spec = RenderSpec.square(1, -2, 2)
    text = render(PointSet.of_points([(-1,), (2,)], 1), spec, "ascii", title="t")
    assert text.splitlines()[0] == "t"
    assert grid_rows(text) == ["     | . # + . #"]


def test_render_svg_marks_support():
    """Support points are filled discs, everything else a grey dot"""
    svg = render_svg(PointSet.of_points([(0, 0), (1, 1)], 2), RenderSpec.square(2, -1, 1), "a<b")
    assert svg.startswith("<svg")
    assert svg.count('r="5"') == 2
    assert svg.count('r="1.5"') == 7
    assert "<title>a&lt;b</title>" in svg


def test_render_rejects_high_rank():
    with pytest.raises(UsageError):
        render(PointSet.of_points([(0, 0, 0)], 3), RenderSpec.square(3, 0, 1), "ascii")
    with pytest.raises(UsageError):
        RenderSpec((1,), (0,))


# -- commands ------------------------------------------------------------------


def test_kunneth_index_four_is_a_single_dot(capsys):
    """H^4 of the product is k concentrated in degree (0,0)"""
    assert main(["kunneth", "--index", "4", "--window", "-2:2"]) == 0
    rows = grid_rows(capsys.readouterr().out)
    assert sum(row.count("#") for row in rows) == 1
    assert rows[2] == "   0 | . . # . ."


def test_kunneth_gdims_json(capsys):
    assert main(["kunneth", "--gdim", "--format", "json"]) == 0
    values = {tuple(entry["q"]): entry["g"] for entry in json.loads(capsys.readouterr().out)}
    assert values == {(): "2", (1,): "3", (2,): "2", (1, 2): "5"}


def test_kunneth_needs_index(capsys):
    assert main(["kunneth"]) == 2
    assert last_error(capsys.readouterr())["error"] == "UsageError"


def test_support_ascii(instance_path, capsys):
    """H^1_(x)(S) fills x-degrees <= -1 with nonnegative y-degree"""
    code = main(["support", instance_path("E1.inst"), "--ideal", "bx", "--module", "S", "-i", "1", "--window", "-2:2"])
    assert code == 0
    rows = grid_rows(capsys.readouterr().out)
    assert rows[2] == "   0 | # # + . ."
    assert rows[3] == "  -1 | . . . . ."


def test_support_json(instance_path, capsys):
    code = main(["support", instance_path("E1.inst"), "--ideal", "bxy", "--module", "S", "-i", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["ideal"], doc["module"], doc["index"]) == ("bxy", "S", 2)
    assert doc["coarse"] and doc["fine"]


def test_anchors_json(instance_path, capsys):
    """Bass numbers of S at m are 0, 0, 1"""
    assert main(["anchors", instance_path("E1.inst"), "--prime", "m", "--module", "S", "--format", "json"]) == 0
    levels = json.loads(capsys.readouterr().out)
    assert [level["bass"] for level in levels] == [0, 0, 1]
    assert levels[2]["points"] == [[-1, -1]]


def test_gdim_table(instance_path, capsys):
    assert main(["gdim", instance_path("E1.inst"), "--ideal", "by", "--module", "Sx"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["Q", "g", "escaping", "box"]
    assert len(lines) == 5
    assert any("inf" in line for line in lines)


def test_fdim_json(instance_path, capsys):
    code = main(
        ["fdim", instance_path("E1.inst"), "--ideal", "by", "--module", "Sx", "--test", "bx", "--format", "json"]
    )
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0] == {"invariant": "grade", "argument": "", "value": "1"}
    assert {"invariant": "f", "argument": "bx", "value": "inf"} in rows


def test_single_theorem(instance_path, capsys):
    code = main(["verify", instance_path("E1.inst"), "--theorem", "thm4.5", "--param", "module=S"])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[-1] == "1/1 passed"


@pytest.mark.slow
def test_verify_suite(capsys):
    """Every bundled instance passes"""
    assert main(["verify", "--suite"]) == 0
    last = capsys.readouterr().out.splitlines()[-1]
    done, total = last.split()[0].split("/")
    assert done == total


def test_verify_needs_something_to_run(capsys):
    assert main(["verify"]) == 2
    assert "--suite" in last_error(capsys.readouterr())["message"]


def test_unknown_module_exits_2(instance_path, capsys):
    code = main(["support", instance_path("E1.inst"), "--ideal", "bx", "--module", "nope", "-i", "1"])
    assert code == 2
    error = last_error(capsys.readouterr())
    assert error["error"] == "UsageError"
    assert error["code"] == 2


def test_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.inst"
    path.write_text("[rings]\n", encoding="utf-8")
    assert main(["bnd", str(path), "--module", "S"]) == 2
    error = last_error(capsys.readouterr())
    assert (error["error"], error["line"], error["column"]) == ("InstanceParseError", 1, 1)


def test_undefined_end(instance_path, capsys):
    """(xy) has no directions"""
    assert main(["end", instance_path("E1.inst"), "--ideal", "rplus", "--module", "S"]) == 2
    assert "we have not defined the end" in last_error(capsys.readouterr())["message"]


def test_invalid_environment(monkeypatch, capsys):
    monkeypatch.setenv("FIELD", "GF(4)")
    assert main(["kunneth", "--gdim"]) == 2
    error = last_error(capsys.readouterr())
    assert error["message"] == "invalid environment"
    assert error["missing"][0].startswith("FIELD")


def test_environment_checked_before_work(mocker, capsys):
    mocker.patch(
        "cli.main.validate_environment",
        return_value=EnvironmentStatus(missing=["MAX_WORKERS must be at least 1"], warnings=[]),
    )
    handler = mocker.patch("cli.main.kunneth_gdims")
    assert main(["kunneth", "--gdim"]) == 2
    handler.assert_not_called()


def test_non_utf8_instance_exits_2(tmp_path, capsys):
    path = tmp_path / "latin.inst"
    path.write_bytes(b"[ring]\nvariables = x\xff\n")
    assert main(["bnd", str(path), "--module", "S"]) == 2
    error = last_error(capsys.readouterr())
    assert (error["error"], error["line"], error["column"]) == ("InstanceParseError", 2, 14)

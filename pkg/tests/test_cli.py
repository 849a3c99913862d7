import json
from importlib import resources

import jsonschema
import pytest

from supnorm.cli import main


def schema(name):
    return json.loads(resources.files("supnorm").joinpath(f"schemas/{name}.schema.json").read_text())


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


COMMANDS = [
    ("run_report", ["ksmall", "verify", "--family", "so-sl", "--k", "2"]),
    ("run_report", ["ksmall", "list"]),
    ("run_report", ["charring", "eval", "--family", "SU2", "--rank", "1", "--lambda", "1", "--x", "2"]),
    ("run_report", ["charring", "mult", "--family", "A", "--rank", "2", "--lambda", "1,0,-1"]),
    ("run_report", ["charring", "levi", "--family", "A", "--rank", "2", "--theta", "0"]),
    ("run_report", ["charring", "search", "--family", "SU2", "--rank", "1", "--x", "i", "--R", "2"]),
    ("satake_table", ["satake", "table", "--n", "2", "--mu", "2,0"]),
    ("run_report", ["satake", "oracle", "--n", "2", "--mu", "2,0", "--p", "3"]),
    ("run_report", ["satake", "amplify", "--n", "2", "--x", "1,1"]),
    ("run_report", ["buildings", "delta", "--family", "A", "--rank", "2", "--mu", "2,1,0"]),
    ("run_report", ["buildings", "sphere", "--n", "3", "--mu", "2,1,0", "--at-q", "2", "--enumerate"]),
    ("run_report", ["buildings", "intersect", "--config", "torus-gl2", "--mu", "1,0", "--p", "3"]),
    ("run_report", ["buildings", "intersect", "--config", "diag-gl2", "--mu", "1,0", "--p", "3",
                    "--twist", "random"]),
    ("section7", ["reproduce", "section7", "--family", "g2"]),
    ("acceptance", ["acceptance", "--only", "5"]),
]


@pytest.mark.parametrize("name,argv", COMMANDS, ids=[" ".join(a[:2]) for _, a in COMMANDS])
def test_reports_validate(capsys, name, argv):
    code, report = run_json(capsys, *argv)
    assert code == 0
    jsonschema.validate(report, schema("run_report"))
    jsonschema.validate(report, schema(name))


def test_output_values(capsys):
    _, r = run_json(capsys, "charring", "eval", "--family", "SU2", "--rank", "1", "--lambda", "1", "--x", "2")
    assert r["outputs"]["value"] == "5/2" and r["exact"]
    _, r = run_json(capsys, "satake", "amplify", "--n", "2", "--x", "1,1", "--strategy", "first")
    assert r["outputs"]["mu"] == [1, 0]
    _, r = run_json(capsys, "buildings", "sphere", "--n", "3", "--mu", "2,1,0", "--at-q", "2", "--enumerate")
    assert r["outputs"]["value"] == r["outputs"]["enumerated"] == 42


def test_text_mode(capsys):
    assert main(["buildings", "delta", "--family", "A", "--rank", "1", "--mu", "1,-1"]) == 0
    assert capsys.readouterr().out.strip()


def test_global_flags_before_subcommand(capsys):
    assert main(["--json", "--seed", "3", "ksmall", "list"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 3


def test_determinism(capsys):
    argv = ["buildings", "intersect", "--config", "diag-gl2", "--mu", "1,0,1,0", "--p", "3",
            "--twist", "random", "--seed", "11"]
    first = run_json(capsys, *argv)
    second = run_json(capsys, *argv)
    assert first == second


def test_timing_flag(capsys):
    _, r = run_json(capsys, "ksmall", "list", "--timing")
    assert r["wall_time"] >= 0


@pytest.mark.parametrize("argv,code", [
    (["ksmall", "verify", "--family", "so-sl", "--k", "9"], 2),
    (["charring", "eval", "--family", "SU2", "--rank", "1", "--lambda", "1", "--x", "0"], 2),
    (["charring", "search", "--family", "SU2", "--rank", "1", "--x", "i", "--R", "1"], 3),
    (["satake", "table", "--n", "2", "--mu", "9,0"], 4),
    (["buildings", "intersect", "--config", "torus-gl2", "--mu", "1,0", "--p", "7"], 2),
    (["acceptance", "--only", "nope"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert "error" in capsys.readouterr().err or code == 3


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["satake"])
    assert exc.value.code == 2


def test_only_filter(capsys):
    _, r = run_json(capsys, "acceptance", "--only", "buildings")
    assert [c["criterion"] for c in r["outputs"]["criteria"]] == [5, 6, 7]

import json
import subprocess
import sys
from pathlib import Path

import pytest

from qeuler.cli import main

GOLDEN = Path(__file__).parent / "golden" / "cli"


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_euler_numbers_csv(capsys):
    code, out, _ = run(capsys, "euler-numbers", "--q", "2", "--n-max", "2")
    assert code == 0
    assert out == "n,value\n0,3/2\n1,-1/2\n2,1/10\n"


def test_euler_numbers_closed_matches_rec(capsys):
    _, a, _ = run(capsys, "euler-numbers", "--q", "3/2", "--n-max", "8")
    _, b, _ = run(capsys, "euler-numbers", "--q", "3/2", "--n-max", "8", "--method", "closed")
    assert a == b


def test_euler_numbers_q_one(capsys):
    code, out, _ = run(capsys, "euler-numbers", "--q", "1", "--n-max", "5")
    assert code == 0
    assert out.splitlines()[1:] == ["0,1/1", "1,-1/2", "2,0/1", "3,1/4", "4,0/1", "5,-1/2"]


@pytest.mark.parametrize("args", [
    ["euler-numbers", "--q", "-1"],
    ["euler-numbers", "--q", "0"],
    ["euler-numbers", "--q", "1", "--method", "closed"],
    ["measure", "--a", "99"],
    ["measure", "--p", "9"],
    ["measure", "--d", "4"],
    ["measure", "--p", "5", "--d", "5"],
    ["verify", "nosuch"],
    ["verify", "witt", "--q", "2"],
    ["characters", "--d", "5", "--index", "9"],
    ["euler-gen", "--chi", "3"],
    ["no-such-command"],
])
def test_usage_errors_exit_2(capsys, args):
    code, _, _ = run(capsys, *args)
    assert code == 2


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "--k", "1", "--p", "3", "--d", "1", "--q", "2", "--level", "1", "--a", "1")
    assert (code, out) == (0, "5/6\n")
    code, out, _ = run(capsys, "measure", "--k", "0", "--a", "0")
    assert out == "7/2\n"  # [2]_6 / 2
    code, out, _ = run(capsys, "measure", "--k", "1", "--p", "3", "--q", "2", "--a", "2", "--format", "json")
    assert json.loads(out)["value"] == "-1/6"


def test_euler_poly(capsys):
    code, out, _ = run(capsys, "euler-poly", "--q", "2", "--a", "1", "--F", "1", "--n-max", "1")
    assert out == "n,value\n0,3/2\n1,1/2\n"
    _, closed, _ = run(capsys, "euler-poly", "--q", "2", "--a", "1", "--F", "3", "--method", "closed")
    _, frac, _ = run(capsys, "euler-poly", "--q", "2", "--a", "1", "--F", "3")
    assert closed == frac


def test_euler_gen_quadratic(capsys):
    code, out, _ = run(capsys, "euler-gen", "--chi", "3:1", "--q", "2", "--n-max", "0", "--p", "5")
    assert out == "n,value\n0,-3/1\n"


def test_characters(capsys):
    code, out, _ = run(capsys, "characters", "--d", "3")
    assert code == 0
    chars = json.loads(out)
    assert [c["values"] for c in chars] == [["0", "1", "1"], ["0", "1", "-1"]]


def test_verify_witt_quadratic_weight_zero(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "witt", "--chi", "3:1", "--n", "0", "--out", str(out_file))
    assert code == 0 and "PASS" in err
    doc = json.loads(out_file.read_text())
    (pt,) = doc["points"]
    assert pt["outcome"] == "exact"
    assert all(s["value"] == "-7/1" for s in pt["samples"])


def test_verify_mutation_exit_1(capsys):
    code, _, err = run(capsys, "verify", "distribution", "--n", "1", "--d", "3", "--q", "2", "--mutate")
    assert code == 1 and "FAIL" in err


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"q": "2", "n_max": 1, "format": "json"}))
    _, out, _ = run(capsys, "euler-numbers", "--config", str(cfg))
    assert [r["value"] for r in json.loads(out)["rows"]] == ["3/2", "-1/2"]
    _, out, _ = run(capsys, "euler-numbers", "--config", str(cfg), "--format", "csv", "--n-max", "0")
    assert out == "n,value\n0,3/2\n"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "euler-numbers", "--config", str(cfg))[0] == 2


def test_parallelism_env_caps(capsys, monkeypatch):
    from qeuler.cli import _parser, build_config

    monkeypatch.setenv("QEULER_PARALLELISM", "2")
    cfg, _ = build_config(_parser().parse_args(["verify", "witt", "--parallelism", "8"]))
    assert cfg.parallelism == 2


def test_no_floats_in_output(capsys):
    for args in (["euler-numbers", "--format", "json"], ["measure", "--format", "json"],
                 ["verify", "witt", "--p", "5", "--n", "1"]):
        _, out, _ = run(capsys, *args)

        def walk(x):
            assert not isinstance(x, float)
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)

        walk(json.loads(out))


@pytest.mark.parametrize("name", ["euler-numbers", "euler-numbers-json", "euler-gen", "euler-gen-5-1",
                                  "euler-poly", "characters", "characters-15", "measure"])
def test_matches_golden_file(name):
    sys.path.insert(0, str(Path(__file__).parents[1] / "scripts"))
    from make_cli_golden import COMMANDS

    out = subprocess.run([sys.executable, "-m", "qeuler", *COMMANDS[name]], capture_output=True).stdout
    assert out == (GOLDEN / f"{name}.txt").read_bytes()

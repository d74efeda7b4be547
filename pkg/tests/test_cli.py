import json
import os
import subprocess
import sys

import pytest

from conftest import GOLDEN, ROOT, structure_file
from infocoh.cli import RunConfig, main, render_text, run
from infocoh.inputs import InputError, parse_spec

sys.path.insert(0, os.path.join(ROOT, "scripts"))
from regen_golden import CASES, render  # noqa: E402


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_reports(name):
    code, text = render(CASES[name])
    assert code == 0
    with open(os.path.join(GOLDEN, name + ".json"), encoding="utf-8") as fh:
        assert text == fh.read()


def test_reports_are_deterministic():
    argv = ["h1", "--alpha", "1,2", "--N", "3", structure_file("two_binary_full.json")]
    assert render(argv) == render(argv)


def test_parse_shipped_files():
    S, Q = parse_spec(structure_file("inverse_limit.json"))
    assert len(S.ids) == 6
    S, Q = parse_spec(structure_file("two_binary_full.json"))
    assert len(S.ids) == 4 and Q.is_full()


def test_non_surjective_file_exits_2(capsys):
    assert main(["validate", structure_file("non_surjective.json")]) == 2
    captured = capsys.readouterr()
    assert "strict_surjections" in captured.err
    assert main(["limit", structure_file("non_surjective.json")]) == 2


def test_malformed_file_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "concrete",\n "omega": [1, 2,]}')
    assert main(["validate", str(p)]) == 2
    assert "line 2 column" in capsys.readouterr().err


def test_bad_inputs(tmp_path):
    p = tmp_path / "k.json"
    p.write_text(json.dumps({"kind": "mystery"}))
    with pytest.raises(InputError, match="unknown kind"):
        parse_spec(str(p))
    p.write_text(json.dumps({"kind": "simplicial", "vertices": [{"id": "a", "cardinality": 2}],
                             "faces": [["a"]], "Q": {"a": {"maximal_supports": [[[5]]]}}}))
    with pytest.raises(InputError, match="unknown value"):
        parse_spec(str(p))
    with pytest.raises(InputError):
        RunConfig("h1", N=0)
    assert main(["h1", "--alpha", "x", structure_file("two_binary_full.json")]) == 2
    assert main(["product", structure_file("two_binary_full.json")]) == 2


def test_restricted_q_in_file(tmp_path):
    doc = {
        "kind": "simplicial",
        "vertices": [{"id": "X", "cardinality": 2}, {"id": "Y", "cardinality": 2}],
        "faces": [["X"], ["Y"], ["X", "Y"]],
        "Q": {"XY": {"maximal_supports": [[[0, 0], [0, 1], [1, 0]], [[1, 1]]]}},
    }
    p = tmp_path / "q.json"
    p.write_text(json.dumps(doc))
    S, Q = parse_spec(str(p))
    assert len(Q["XY"].maximal_supports) == 2


def test_every_command_runs(tmp_path):
    two = structure_file("two_binary_full.json")
    inv = structure_file("inverse_limit.json")
    cases = [
        ("z1", [two]), ("h0", [two]), ("fit-lambda", [two]), ("entropy", [two]),
        ("product", [two, inv]), ("coproduct", [two, inv]), ("orbit", []),
    ]
    for cmd, files in cases:
        rep, code = run(RunConfig(cmd, files, ["1", "2"], N=3))
        assert code == 0, (cmd, rep.get("error"))
        assert rep["version"] and rep["alpha"] == ["1", "2"] and rep["N"] == 3
        assert render_text(rep).startswith("infocoh")
    rep, code = run(RunConfig("funceq", [], ["1", "2"], N=8))
    assert code == 0
    assert rep["result"]["propagation"]["covered"]


def test_cochain_file_roundtrip(tmp_path):
    from infocoh.cochain import random_cochain
    S, Q = parse_spec(structure_file("two_binary_full.json"))
    f = random_cochain(S, Q, 1, 1, 3, seed=1)
    p = tmp_path / "f.json"
    p.write_text(json.dumps(f.to_dict()))
    rep, code = run(RunConfig("cocycle-check", [structure_file("two_binary_full.json")], N=3, cochain=str(p)))
    assert code == 0 and rep["result"]["cocycle"] is False


def test_out_flag_writes_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["modular-check", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["passed"] == 7
    assert "passed: 7" in capsys.readouterr().out


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "infocoh.cli", "limit", structure_file("inverse_limit.json"),
                        "--format", "json"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["count"] == 5

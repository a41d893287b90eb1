import json
import subprocess
import sys

import pytest

from llseries import cli
from llseries.field import PrimeField
from llseries.instances import adaptable_fixture, witness_fixture
from llseries.serialize import dumps, instance_from_json, instance_to_json


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, h in (("adaptable", adaptable_fixture()), ("witness", witness_fixture())):
        p = tmp_path / ("%s.json" % name)
        p.write_text(dumps(instance_to_json(h)))
        paths[name] = p
    paths["dir"] = tmp_path
    return paths


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_passes_on_monomial_fixture(files, capsys):
    code, out, _ = run(["check", "--instance", files["adaptable"]], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert all(p == t for p, t in report["summary"].values())


def test_unique_on_witness(files, capsys):
    code, out, _ = run(["unique", "--instance", files["witness"], "--seed", "0"], capsys)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["unique"] is False
    assert [1, 1, 3] in verdict["failures"]
    assert len(set(verdict["corroboration"]["witness"]["digests"])) == 2


def test_unique_on_adaptable_reports_consistency(files, capsys):
    code, out, _ = run(["unique", "--instance", files["adaptable"], "--trials", "3"], capsys)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["unique"] is True
    assert all(p == t for p, t in verdict["consistency"].values())


def test_build_then_check_grid(files, capsys):
    grid = files["dir"] / "grid.json"
    code, _, err = run(["build", "--instance", files["witness"], "--seed", "4", "--out", grid], capsys)
    assert code == 0 and "exact extension verified" in err
    trace = files["dir"] / "grid.json.trace.jsonl"
    lines = trace.read_text().splitlines()
    assert json.loads(lines[0])["case"] == "column0"
    assert json.loads(lines[-1])["case"] == "assert-closure"
    payload = json.loads(grid.read_text())
    assert payload["strategy"] == {"mode": "seeded", "seed": 4}
    assert "1,1" in payload["grid"]
    code, out, _ = run(["check", "--instance", files["witness"], "--grid", grid], capsys)
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["replay"] == [1, 1] and summary["extends"] == [1, 1]


def test_check_fails_on_tampered_grid(files, capsys):
    grid = files["dir"] / "grid.json"
    run(["build", "--instance", files["witness"], "--out", grid], capsys)
    payload = json.loads(grid.read_text())
    payload["grid"]["1,1"] = [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"]]
    grid.write_text(json.dumps(payload))
    code, out, _ = run(["check", "--instance", files["witness"], "--grid", grid], capsys)
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_grid_csv(files, capsys):
    code, out, _ = run(["grid", "--instance", files["witness"]], capsys)
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "i,l,dimK,j,k,in_region"
    assert "1,1,3,1,1,1" in rows
    assert "3,1,3,,1,0" in rows
    assert len(rows) == 1 + 15


def test_check_csv_format(files, capsys):
    code, out, _ = run(["check", "--instance", files["adaptable"], "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "check,i,l,pass"


def test_gen_writes_valid_instance(files, capsys):
    out = files["dir"] / "gen.json"
    code, stdout, _ = run(["gen", "--d", "5", "--r", "1", "--b", "0,2", "--bp", "1,3", "--seed", "2", "--out", out], capsys)
    assert code == 0
    assert stdout.strip() == "d=5 r=1 a=[3, 5] b=[0, 2] b'=[1, 3] c=[2, 4]"
    data = json.loads(out.read_text())
    assert data["d"] == 5 and len(data["V_X2"]) == 2
    code, _, _ = run(["check", "--instance", out], capsys)
    assert code == 0


def test_gen_monomial_to_stdout(capsys):
    code, out, err = run(["gen", "--d", "4", "--r", "1", "--b", "0,4", "--monomial"], capsys)
    assert code == 0
    assert json.loads(out)["V_X2"] == [["1", "0", "0", "0", "0"], ["0", "0", "0", "0", "1"]]
    assert err.startswith("d=4 r=1")


def test_field_override(files, capsys):
    code, out, _ = run(["check", "--instance", files["witness"], "--field", "prime:7"], capsys)
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("argv", [
    ["check"],
    ["check", "--instance", "/nonexistent.json"],
    ["gen", "--d", "4", "--r", "1", "--b", "0,3", "--bp", "0,2", "--pairing", "0,1"],
    ["gen", "--d", "4", "--r", "1", "--b", "0,x", "--bp", "0,2"],
    ["gen", "--d", "4", "--r", "2", "--b", "0,4", "--monomial"],
    ["unique", "--instance", "x", "--trials", "0"],
    ["bogus"],
    ["check", "--instance", "WITNESS", "--field", "prime:3"],
])
def test_input_errors_exit_2(argv, files, capsys):
    argv = [str(files["witness"]) if a == "WITNESS" else a for a in argv]
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_invalid_instance_file(files, capsys):
    bad = files["dir"] / "bad.json"
    bad.write_text('{"d": 4, "r": 1, "V_X1": [["1","0","0","0","0"]]}')
    assert run(["check", "--instance", bad], capsys)[0] == 2
    bad.write_text("{not json")
    assert run(["check", "--instance", bad], capsys)[0] == 2


def test_module_entry_point_is_byte_stable(files, tmp_path):
    argv = [sys.executable, "-m", "llseries", "unique", "--instance", str(files["witness"]), "--seed", "1", "--trials", "4"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_serialized_instance_round_trip():
    for h in (witness_fixture(), witness_fixture(PrimeField(5))):
        again = instance_from_json(json.loads(dumps(instance_to_json(h))))
        assert (again.V1, again.V2, again.V3) == (h.V1, h.V2, h.V3)
        assert again.field == h.field

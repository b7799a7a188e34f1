from __future__ import annotations

import csv
import io
import json
import os
import subprocess
import sys

import pytest

from charsum.cli import main
from charsum.cyc import CycNum


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCommands:
    def test_lseries_jacobi(self, capsys):
        code, out, _ = run(capsys, "lseries", "--p", "5", "--h", "1", "--n", "2", "--branch", "0,1,2",
                           "--exps", "1,1,1", "--j", "1", "--method", "jacobi")
        assert code == 0
        data = json.loads(out)
        assert data["convention"] == "paper"
        assert [CycNum.from_dict(c) for c in data["coeffs"]] == [1, 2, 5]

    @pytest.mark.parametrize("method", ["oracle-paper", "oracle-artin", "jacobi", "euler"])
    def test_methods_agree_for_q5(self, capsys, method):
        code, out, _ = run(capsys, "lseries", "--p", "5", "--n", "2", "--branch", "0,1,2", "--exps", "1,1,1",
                           "--method", method)
        assert code == 0
        assert [CycNum.from_dict(c) for c in json.loads(out)["coeffs"]] == [1, 2, 5]

    def test_json_roundtrip_canonical(self, capsys):
        code, out, _ = run(capsys, "lseries", "--p", "13", "--n", "4", "--branch", "0,1,5", "--exps", "1,1,3")
        for c in json.loads(out)["coeffs"]:
            x = CycNum.from_dict(c)
            assert list(x.canonical()) == c["coeffs"] and x.denom == c["denom"]

    def test_census_csv(self, capsys):
        code, out, _ = run(capsys, "census", "--p", "7", "--h", "1", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        row6 = next(r for r in rows if r["lambda"] == "6")
        assert row6["supersingular"] == "true" and row6["count_N1"] == "8"

    def test_census_json(self, capsys):
        code, out, _ = run(capsys, "census", "--p", "5")
        data = json.loads(out)
        assert data["matrix"]["minors"] == [1, -24, -64, 2048]
        assert data["matrix"]["signature"] == [2, 2]

    def test_field_and_jacobi(self, capsys):
        code, out, _ = run(capsys, "field", "--p", "3", "--h", "2", "--table")
        data = json.loads(out)
        assert data["q"] == 9 and len(data["elements"]) == 9
        code, out, _ = run(capsys, "jacobi", "--p", "5", "--exps", "1,2")
        data = json.loads(out)
        assert CycNum.from_dict(data["norm"]) == 5

    def test_zeta(self, capsys):
        code, out, _ = run(capsys, "zeta", "--p", "5", "--n", "2", "--branch", "0,1,2", "--exps", "1,1,1")
        data = json.loads(out)
        assert code == 0 and data["N"] == [8, 32] and data["match"]

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "l.json"
        code, out, _ = run(capsys, "lseries", "--p", "5", "--n", "2", "--branch", "0,1,2", "--exps", "1,1,1",
                           "--output", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["q"] == 5

    def test_verify_p5(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all", "--p", "5", "--h", "1")
        assert code == 0 and json.loads(out)["ok"]


class TestErrors:
    @pytest.mark.parametrize("argv,flag", [
        (["lseries", "--p", "5", "--n", "3", "--branch", "0,1,2", "--exps", "1,1,1"], "--n"),
        (["lseries", "--p", "5", "--n", "2", "--branch", "0,1,1", "--exps", "1,1,1"], "--branch"),
        (["lseries", "--p", "5", "--n", "2", "--branch", "0,1,x", "--exps", "1,1,1"], "--branch"),
        (["lseries", "--p", "5", "--n", "4", "--branch", "0,1,2,3", "--exps", "1,1,1,3", "--j", "2"], "--j"),
        (["lseries", "--p", "6", "--n", "2", "--branch", "0,1,2", "--exps", "1,1,1"], "--p"),
        (["zeta", "--p", "5", "--n", "4", "--branch", "0,1,2,3", "--exps", "1,1,1,3"], "--exps"),
    ])
    def test_structured_errors(self, capsys, argv, flag):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == ""
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["flag"] == flag and payload["error"]

    def test_argparse_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["lseries", "--p", "5"])
        assert exc.value.code == 2
        assert "--n" in capsys.readouterr().err


class TestDeterminism:
    def test_threads(self, capsys):
        outs = []
        for t in ("1", "3"):
            code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--p", "7", "--threads", t)
            outs.append(out)
        assert outs[0] == outs[1]

    def test_env_threads(self, capsys, monkeypatch):
        argv = ["lseries", "--p", "13", "--n", "4", "--branch", "0,1,5,7", "--exps", "1,1,1,3"]
        code, a, _ = run(capsys, *argv)
        monkeypatch.setenv("CHARSUM_THREADS", "4")
        code, b, _ = run(capsys, *argv)
        assert a == b

    def test_module_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "charsum", "jacobi", "--p", "3", "--exps", "1,1"],
                             capture_output=True, text=True, env={**os.environ})
        assert res.returncode == 0
        assert CycNum.from_dict(json.loads(res.stdout)["value"]) == -1

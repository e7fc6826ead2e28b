import json

import pytest

from dioph_embed.cli import run


def test_pell_command(capsys):
    assert run(["pell", "--t", "t^2+2", "--n", "2", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "X = 2*t^4 + 8*t^2 + 7" in out
    assert "Y = 2*t^2 + 4" in out
    assert "= 1: pass" in out


def test_pell_json(tmp_path):
    out = tmp_path / "p.json"
    assert run(["pell", "--t", "t", "--n", "3", "--verify", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["X"] == "4*t^3 - 3*t"
    assert doc["residue"] == 3
    assert doc["Z"] == "4*t + 4"


def test_divfam_command(tmp_path):
    out = tmp_path / "d.json"
    assert run(["divfam", "--n", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["H"] == ["x1", "x1*x2 + 1"]
    assert run(["divfam", "--n", "1", "--constants", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == {"constants": [1], "H": ["x1"], "P": "x1 + 1"}


def test_divfam_errors(tmp_path):
    out = str(tmp_path / "d.json")
    assert run(["divfam", "--n", "9", "--out", out]) == 3
    assert run(["divfam", "--constants", "3,3", "--out", out]) == 3
    assert run(["divfam", "--n", "2", "--constants", "1,2,3", "--out", out]) == 2
    assert run(["divfam", "--constants", "1,x", "--out", out]) == 2


def _pipeline(tmp_path, case, dioph, names, solution):
    v, w = tmp_path / f"{case}_v.json", tmp_path / f"{case}_w.json"
    assert run(["reduce", case, "--dioph", dioph, "--vars", names, "--out", str(v)]) == 0
    assert run(["witness", case, "--dioph", dioph, "--vars", names, "--solution", solution, "--out", str(w)]) == 0
    return v, w


def test_real_pipeline(tmp_path, capsys):
    v, w = _pipeline(tmp_path, "real", "x1^2 - x2^2 - 3", "x1,x2", "2,1")
    doc = json.loads(v.read_text())
    assert len(doc["coordinates"]) == 12 and len(doc["equations"]) == 8
    report = tmp_path / "r.json"
    assert run(["verify", "--variety", str(v), "--witness", str(w), "--out", str(report)]) == 0
    r = json.loads(report.read_text())
    assert r["verdict"] == "pass" and r["jacobian_rank"] == 1


def test_tampered_witness_exit_1(tmp_path, capsys):
    v, w = _pipeline(tmp_path, "real", "x1^2 - x2^2 - 3", "x1,x2", "2,1")
    doc = json.loads(w.read_text())
    doc["assignment"]["Y_1"] = "2*T + 1"
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    capsys.readouterr()
    assert run(["verify", "--variety", str(v), "--witness", str(tampered)]) == 1
    out = capsys.readouterr().out
    assert "equation 0 (pell_1) nonzero" in out
    assert "verdict: fail" in out


def test_complex_pipeline(tmp_path):
    v, w = _pipeline(tmp_path, "complex", "x1 + x2 - x3", "x1,x2,x3", "1,2,3")
    assert run(["verify", "--variety", str(v), "--witness", str(w)]) == 0


def test_expanded_real_witness(tmp_path):
    w = tmp_path / "w.json"
    args = ["witness", "real", "--dioph", "x1 - 1", "--vars", "x1", "--solution", "1", "--expand", "--out", str(w)]
    assert run(args) == 0
    assert json.loads(w.read_text())["assignment"]["X_1"] == "t^2 + 2"


def test_byte_identical_outputs(tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        v, w = _pipeline(d, "real", "x1^2 - x2^2 - 3", "x1,x2", "2,1")
        r = d / "r.json"
        run(["verify", "--variety", str(v), "--witness", str(w), "--seed", "4", "--out", str(r)])
        outs.append([p.read_bytes() for p in (v, w, r)])
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["pell", "--t", "t^", "--n", "2"], 2),
        (["pell", "--t", "t", "--n", "2", "--bogus"], 2),
        (["frobnicate"], 2),
        ([], 2),
        (["reduce", "real", "--dioph", "2x", "--vars", "x", "--out", "o.json"], 2),
        (["reduce", "real", "--dioph", "y", "--vars", "x", "--out", "o.json"], 2),
        (["reduce", "complex", "--dioph", "x1 - x2", "--vars", "x1,x2", "--out", "o.json"], 3),
        (["reduce", "real", "--dioph", "1/2*x", "--vars", "x", "--out", "o.json"], 3),
        (["witness", "real", "--dioph", "x1", "--vars", "x1", "--solution", "0", "--out", "o.json"], 3),
        (["witness", "real", "--dioph", "x1 - 2", "--vars", "x1", "--solution", "3", "--out", "o.json"], 3),
        (["witness", "real", "--dioph", "x1 - 2", "--vars", "x1", "--solution", "2,2", "--out", "o.json"], 3),
        (["witness", "complex", "--dioph", "x1 - 2", "--vars", "x1", "--solution", "2", "--out", "o.json"], 3),
        (["witness", "real", "--dioph", "x1 - 2", "--vars", "x1", "--solution", "a", "--out", "o.json"], 2),
        (["verify", "--variety", "missing.json", "--witness", "missing.json"], 2),
    ],
)
def test_exit_codes(argv, code, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(argv) == code


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "--variety", str(bad), "--witness", str(bad)]) == 2
    bad.write_text(json.dumps({"version": 7}))
    assert run(["verify", "--variety", str(bad), "--witness", str(bad)]) == 2


def test_incomplete_witness_is_semantic(tmp_path):
    v, w = _pipeline(tmp_path, "real", "x1 - 1", "x1", "1")
    doc = json.loads(w.read_text())
    del doc["assignment"]["S"]
    w.write_text(json.dumps(doc))
    assert run(["verify", "--variety", str(v), "--witness", str(w)]) == 3

import json

import pytest

from qgev import golden
from qgev.cli import main
from qgev.linalg import ExactMatrix
from qgev.poly import UniPoly


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_text_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "30")
    assert code == 0
    assert out.rstrip().endswith("overall: pass")
    code, out1, _ = run(capsys, "verify", "--json", "--samples", "30", "--seed", "2")
    _, out2, _ = run(capsys, "verify", "--json", "--samples", "30", "--seed", "2")
    assert code == 0 and out1 == out2
    data = json.loads(out1)
    assert all(c["verdict"] == "pass" for c in data)


def test_verify_env_width(capsys, monkeypatch):
    monkeypatch.setenv("QGEV_WIDTH", "1/1000000000")
    code, out, _ = run(capsys, "verify", "--json", "--samples", "0")
    assert code == 0
    lam = next(c for c in json.loads(out) if c["check"] == "spectra.lambda_rho1")
    from fractions import Fraction

    assert Fraction(lam["exact"]["hi"]) - Fraction(lam["exact"]["lo"]) <= Fraction(1, 10**9)


def test_emit_round_trip_and_pair(capsys, tmp_path):
    rho_path, w_path = tmp_path / "rho1.json", tmp_path / "w.json"
    assert main(["emit", "rho1", "-o", str(rho_path)]) == 0
    assert main(["emit", "witness", "-o", str(w_path)]) == 0
    rho = ExactMatrix.from_json(json.loads(rho_path.read_text()))
    assert rho == golden.rho1()
    assert ExactMatrix.from_json(json.loads(w_path.read_text())) == golden.witness()
    # rationals are written as strings
    assert all(isinstance(x, str) for row in json.loads(rho_path.read_text())["rows"] for x in row)
    code, out, _ = run(capsys, "pair", str(rho_path), str(w_path))
    assert code == 0 and out.strip() == "0"


@pytest.mark.parametrize("name", ["sigma1", "sigma2"])
def test_emit_states_have_unit_trace(capsys, name):
    code, out, _ = run(capsys, "emit", name)
    assert code == 0
    assert ExactMatrix.from_json(json.loads(out)).trace() == 1


def test_emit_charpolys(capsys):
    _, out, _ = run(capsys, "emit", "charpoly-rho1")
    assert UniPoly.from_json(json.loads(out)) == golden.charpoly_rho1()
    _, out, _ = run(capsys, "emit", "charpoly-rho1-gamma")
    assert UniPoly.from_json(json.loads(out)) == golden.charpoly_rho1_gamma()


def test_ptranspose_diagonal_is_unchanged(capsys, tmp_path):
    D = ExactMatrix.diag(list(range(1, 9)), dims=(2, 2, 2))
    src = tmp_path / "d.json"
    src.write_text(json.dumps(D.to_json()))
    for subset in ("A", "BC", "1,3"):
        code, out, _ = run(capsys, "ptranspose", str(src), "--dims", "2,2,2", "--subset", subset)
        assert code == 0
        assert json.loads(out) == D.to_json()


def test_ptranspose_without_dims_uses_file_dims(capsys, tmp_path):
    out_path = tmp_path / "wg.json"
    assert main(["emit", "witness", "-o", str(tmp_path / "w.json")]) == 0
    code = main(["ptranspose", str(tmp_path / "w.json"), "--subset", "A", "-o", str(out_path)])
    assert code == 0
    Wg = ExactMatrix.from_json(json.loads(out_path.read_text()))
    assert Wg != golden.witness() and Wg.trace() == 17


def test_charpoly_and_choi(capsys, tmp_path):
    M = tmp_path / "m.json"
    M.write_text(json.dumps({"kind": "matrix", "field": "rational", "rows": [["2", "1"], ["1", "2"]]}))
    code, out, _ = run(capsys, "charpoly", str(M))
    assert code == 0 and json.loads(out) == {"coeffs": ["3", "-4", "1"]}
    main(["emit", "witness", "-o", str(tmp_path / "w.json")])
    X = tmp_path / "x.json"
    X.write_text(json.dumps({"kind": "matrix", "field": "rational", "rows": [["0", "0"], ["0", "1"]]}))
    code, out, _ = run(capsys, "choi", str(tmp_path / "w.json"), "--dims", "2,2,2", "--subset", "B", "--apply", str(X))
    assert code == 0
    img = ExactMatrix.from_json(json.loads(out))
    assert img[1, 1] == 4 and img[3, 3] == 2


def test_minors(capsys):
    code, out, _ = run(capsys, "minors", "C")
    assert code == 0
    assert "Delta^C_4 > 0 for alpha != 0" in out
    assert out.count("identity: pass") == 4


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--width", "-1")[0] == 2
    assert run(capsys, "ptranspose", "x.json")[0] == 2
    code, _, err = run(capsys, "pair", str(tmp_path / "missing.json"), str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "charpoly", str(bad))[0] == 3
    small = tmp_path / "s.json"
    small.write_text(json.dumps({"kind": "matrix", "rows": [["1", "0"], ["0", "1"]]}))
    main(["emit", "witness", "-o", str(tmp_path / "w.json")])
    assert run(capsys, "pair", str(small), str(tmp_path / "w.json"))[0] == 3
    assert run(capsys, "ptranspose", str(small), "--dims", "2,2,2", "--subset", "A")[0] == 3
    assert run(capsys, "ptranspose", str(small), "--dims", "2", "--subset", "A")[0] == 3
    assert run(capsys, "charpoly", str(tmp_path / "w.json"), "-o", str(tmp_path / "no" / "dir.json"))[0] == 3


def test_verify_failure_exit_code(capsys, monkeypatch):
    import qgev.pipeline as pipeline

    bad = golden.witness().entries
    rows = [list(r) for r in bad]
    rows[0][0] = rows[0][0] + 1
    monkeypatch.setattr(pipeline.golden, "witness", lambda: ExactMatrix(rows, (2, 2, 2)))
    code, out, _ = run(capsys, "verify", "--samples", "0")
    assert code == 1
    assert out.rstrip().endswith("overall: fail")

import json

import pytest

from gramspec.cli import run
from gramspec.forms import RootList
from gramspec.subspaces import span

from .conftest import G, X, Y

I = G(0, 1)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_json(capsys):
    code, out, _ = call(capsys, "construct", "--flavor", "hermitian", "--k", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert list(data)[:5] == ["k", "flavor", "variant", "f", "generators"]
    assert data["report"]["rank"] == 4 and data["report"]["dimension"] == 3


def test_construct_deterministic(capsys):
    outs = {call(capsys, "construct", "--flavor", "symmetric", "--k", "1", "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_diagram_text(capsys):
    code, out, _ = call(capsys, "diagram", "--d", "8", "--flavor", "symmetric")
    assert code == 0
    assert "[19, 21] excluding 21" in out and "[28, 28]" in out
    code, out, _ = call(capsys, "diagram", "--d", "5", "--flavor", "hermitian", "--format", "json")
    assert json.loads(out)["rows"][2] == {"r": 3, "lower": 0, "upper": 4, "excluded": [], "bounds_only": True}


def test_rank_one_count(tmp_path, capsys):
    path = tmp_path / "f.json"
    r = RootList(G(1), (I, -I, 2 * I, -2 * I, G(1, 1), G(1, -1)))
    path.write_text(json.dumps(r.to_json()))
    code, out, _ = call(capsys, "rank-one", "--roots", str(path), "--count")
    assert code == 0 and out.strip() == "count: 8"
    code, out, _ = call(capsys, "rank-one", "--roots", str(path), "--enumerate", "--format", "json")
    assert json.loads(out)["count"] == 8
    code, out, _ = call(capsys, "rank-one", "--roots", str(path), "--low-rank", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["sum_rank"] <= data["bound"] == 4
    code, out, _ = call(capsys, "factor-face", "--roots", str(path), "--r", "3", "--format", "json")
    assert code == 0 and json.loads(out)["dimension"] == 4


def test_analyze_certificate_file(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, _, _ = call(capsys, "construct", "--flavor", "hermitian", "--k", "2", "--format", "json", "--out", str(cert))
    assert code == 0
    code, out, _ = call(capsys, "analyze", "--tensors", str(cert), "--format", "json")
    assert code == 0 and json.loads(out)["simplex"] is True
    code, _, err = call(capsys, "analyze", "--tensors", str(cert), "--flavor", "symmetric")
    assert code == 2 and "invalid input" in err


def test_root_certificate(tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text(json.dumps(span([(X - Y) * m for m in (X * X, X * Y, Y * Y)]).to_json()))
    code, out, _ = call(capsys, "root-certificate", "--subspace", str(path))
    assert code == 0 and "point: (1:1)" in out
    path.write_text(json.dumps(span([X * X * X, Y * Y * Y]).to_json()))
    code, _, err = call(capsys, "root-certificate", "--subspace", str(path))
    assert code == 2


def test_invalid_inputs(tmp_path, capsys):
    assert call(capsys, "construct", "--flavor", "nope", "--k", "1")[0] == 2
    assert call(capsys, "construct", "--flavor", "hermitian", "--k", "0")[0] == 2
    assert call(capsys, "rank-one", "--roots", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert call(capsys, "rank-one", "--roots", str(bad))[0] == 2
    real = tmp_path / "real.json"
    real.write_text(json.dumps(RootList(G(1), (G(1), G(2))).to_json()))
    assert call(capsys, "rank-one", "--roots", str(real), "--count")[0] == 2
    assert call(capsys, "construct", "--flavor", "hermitian", "--k", "1", "--seed", "-1")[0] == 2
    assert call(capsys)[0] == 2


def test_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("GRAMSPEC_SEED", "42")
    a = call(capsys, "construct", "--flavor", "hermitian", "--k", "2", "--random-scalars", "--format", "json")[1]
    b = call(capsys, "construct", "--flavor", "hermitian", "--k", "2", "--random-scalars", "--seed", "42", "--format", "json")[1]
    assert a == b
    monkeypatch.setenv("GRAMSPEC_SEED", "abc")
    assert call(capsys, "diagram", "--d", "3", "--flavor", "hermitian")[0] == 2


def test_verify_suites(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "constructions")
    assert code == 0 and "FAIL" not in out
    code, out, _ = call(capsys, "verify", "--suite", "bounds", "--samples", "20", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = call(capsys, "verify", "--suite", "density", "--samples", "5")
    assert code == 0


def test_verify_failure_exit_code(monkeypatch, capsys):
    import gramspec.cli as cli

    def broken(args, record):
        record("always fails", False, "forced")

    monkeypatch.setitem(cli.SUITES, "bounds", broken)
    code, out, err = call(capsys, "verify", "--suite", "bounds")
    assert code == 1 and "FAIL always fails" in out and "always fails" in err


def test_certificate_failure_exit_code(monkeypatch, capsys):
    import gramspec.cli as cli
    from gramspec.errors import CertificateError

    def boom(*a, **k):
        raise CertificateError("check failed: face rank k+1")

    monkeypatch.setattr(cli, "hermitian_simplex_face", boom)
    code, _, err = call(capsys, "construct", "--flavor", "hermitian", "--k", "2")
    assert code == 1 and "face rank k+1" in err

import json

import numpy as np
import pytest

from tomokit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tomogram_vacuum(capsys):
    code, out, _ = run(capsys, "tomogram", "--state", "vacuum", "--query", "0,1,0")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "X,mu1,nu1,w"
    assert float(row.split(",")[-1]) == pytest.approx(np.pi**-0.5, abs=1e-6)


def test_tomogram_errors(capsys):
    assert run(capsys, "tomogram", "--state", "vacuum")[0] == 2
    code, _, err = run(capsys, "tomogram", "--state", "vacuum", "--query", "0,0,0")
    assert code == 2 and "sigma" in err
    assert run(capsys, "tomogram", "--config", "/nonexistent.cfg", "--query", "0,1,0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_tomogram_methods_agree(capsys, tmp_path):
    cfg = tmp_path / "cat.cfg"
    cfg.write_text("state = cat\nalpha_re = 0.8\nalpha_im = 0.3\nparity = -1\nquery = 0.2,0.9,0.4\n")
    _, a, _ = run(capsys, "tomogram", "--config", str(cfg))
    _, r, _ = run(capsys, "tomogram", "--config", str(cfg), "--method", "radon")
    assert float(a.splitlines()[-1].split(",")[-1]) == pytest.approx(float(r.splitlines()[-1].split(",")[-1]), abs=1e-3)


def test_tomogram_joint_column(capsys):
    code, out, _ = run(capsys, "tomogram", "--query", "0,1,0", "--prior", "gaussian")
    row = out.strip().splitlines()[-1].split(",")
    assert code == 0 and float(row[-1]) == pytest.approx(np.pi**-1.5 * np.exp(-1), abs=1e-6)


def test_entropy_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "entropy-sweep", "--out", str(tmp_path))
    assert code == 0
    plus = (tmp_path / "entropy_plus.csv").read_text().splitlines()
    minus = (tmp_path / "entropy_minus.csv").read_text().splitlines()
    assert plus[0] == "alpha1_sq,alpha2_sq,parity,entropy"
    assert len(plus) == len(minus) == 601
    assert plus[1] == "0,0.5,1,0"
    rows = [list(map(float, l.split(","))) for l in minus[1:]]
    peak = max((r for r in rows if r[1] == 1.0), key=lambda r: r[3])
    assert peak[3] == pytest.approx(0.5, abs=1e-6) and abs(peak[0] - 1) < 0.03
    dat = (tmp_path / "entropy_plus.dat").read_text().splitlines()
    assert len(dat) == 201 and len(dat[1].split()) == 4
    assert run(capsys, "entropy-sweep", "--alpha1-sq-range", "5,0,10")[0] == 2


def test_roundtrip(capsys):
    code, out, _ = run(capsys, "roundtrip", "--state", "coherent", "--alpha", "1")
    rep = json.loads(out)
    assert code == 0 and rep["fidelity"] >= 0.999 and rep["frobenius_error"] <= 1e-3
    assert rep["trace"] == pytest.approx(1, abs=1e-8) and rep["hermiticity_residual"] < 1e-10


def test_wigner(capsys):
    code, out, _ = run(capsys, "wigner", "--state", "vacuum")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# axis:") and lines[2] == "q,p,W"
    data = np.array([list(map(float, l.split(","))) for l in lines[3:]])
    i = int(np.argmax(data[:, 2]))
    assert data[i, 2] == pytest.approx(2.0, abs=1e-6)
    assert data[i, 0] == 0.0 and data[i, 1] == 0.0


def test_kernel_check(capsys):
    code, out, _ = run(capsys, "kernel-check")
    rep = json.loads(out)
    assert code == 0 and all(r["pass"] for r in rep)
    assert set(rep[0]) == {"check_name", "lhs", "rhs", "abs_err", "tol", "pass"}


def test_verify_default_and_filters(capsys):
    code, out, _ = run(capsys, "verify")
    rep = json.loads(out)
    assert code == 0 and all(c["pass"] for c in rep)
    assert set(rep[0]) == {"suite", "check", "value", "tolerance", "pass"}
    code, out, _ = run(capsys, "verify", "--suite", "homogeneity")
    assert code == 0 and {c["suite"] for c in json.loads(out)} == {"homogeneity"}
    code, out, _ = run(capsys, "verify", "--tolerance", "1e-15")
    assert code == 1 and not all(c["pass"] for c in json.loads(out))


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--suite", "nonnegativity", "--suite", "probability", "--out", str(a))
    run(capsys, "verify", "--suite", "nonnegativity", "--suite", "probability", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_thread_cap(capsys, monkeypatch):
    monkeypatch.setenv("TOMOKIT_THREADS", "1")
    assert run(capsys, "tomogram", "--query", "0,1,0")[0] == 0
    monkeypatch.setenv("TOMOKIT_THREADS", "zero")
    assert run(capsys, "tomogram", "--query", "0,1,0")[0] == 2


def test_accuracy_error_exit_code(capsys, monkeypatch):
    from tomokit.errors import AccuracyError

    def boom(cfg):
        raise AccuracyError("did not converge")

    monkeypatch.setattr(cli, "cmd_roundtrip", boom)
    assert run(capsys, "roundtrip")[0] == 3

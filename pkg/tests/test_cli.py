import json
import os
import subprocess
import sys
from math import log, pi

import numpy as np
import pytest

from cgpkit import channels as ch
from cgpkit.cli import main
from cgpkit.channels import KrausChannel, channel_document, write_document


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, doc):
        p = tmp_path / name
        write_document(doc, p)
        paths[name] = str(p)

    put("hadamard_k.json", channel_document(KrausChannel.from_unitary(ch.hadamard())))
    put("identity_k.json", channel_document(KrausChannel((np.eye(2),))))
    put("mixture.json", channel_document(ch.mixture([0.5, 0.5], [np.eye(2), ch.hadamard()])))
    put("damping.json", channel_document(ch.amplitude_damping(0.3)))
    put("notunitary.json", {"dim": 2, "unitary": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})
    (tmp_path / "garbled.json").write_text("{not json")
    paths["garbled.json"] = str(tmp_path / "garbled.json")
    put("not_tp.json", {"dim": 2, "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]]})
    paths["dir"] = tmp_path
    return paths


def test_gate_then_exact(capsys, files):
    out = str(files["dir"] / "h.json")
    assert run(capsys, "gate", "hadamard", "--out", out)[0] == 0
    code, text, _ = run(capsys, "exact", out)
    rep = json.loads(text)
    assert code == 0 and rep["dim"] == 2
    assert rep["cgp"] == pytest.approx(log(2) - 0.5, abs=1e-15)
    assert rep["max_cgp"] == pytest.approx(log(2) - 0.5, abs=1e-15)


def test_fourier_is_max(capsys, files):
    out = str(files["dir"] / "f4.json")
    run(capsys, "gate", "fourier:4", "--out", out)
    rep = json.loads(run(capsys, "exact", out)[1])
    assert rep["is_max"] is True
    assert rep["cgp"] == pytest.approx(0.30296102778655754, abs=1e-13)


def test_exact_csv(capsys, files):
    out = str(files["dir"] / "r.json")
    run(capsys, "gate", "rotation:0.7853981633974483", "--out", out)
    code, text, _ = run(capsys, "exact", out, "--format", "csv")
    header, row = text.strip().split("\n")
    assert header == "dim,cgp,max_cgp,is_max"
    assert row.startswith("2,0.1931471805599")
    assert row.endswith(",true")


def test_sqrt_swap_encoding(capsys, files):
    out = files["dir"] / "sq.json"
    run(capsys, "gate", "sqrt-swap", "--out", str(out))
    doc = json.loads(out.read_text())
    expected = [[1, 0, 0, 0], [0, 0.5 + 0.5j, 0.5 - 0.5j, 0], [0, 0.5 - 0.5j, 0.5 + 0.5j, 0], [0, 0, 0, 1]]
    assert doc["unitary"] == [[[z.real, z.imag] for z in map(complex, row)] for row in expected]


def test_exact_errors(capsys, files):
    code, _, err = run(capsys, "exact", files["notunitary.json"])
    assert code == 3 and "unitarity check failed" in err and "notunitary.json" in err
    code, _, err = run(capsys, "exact", files["garbled.json"])
    assert code == 2 and "garbled.json" in err
    code, _, err = run(capsys, "exact", str(files["dir"] / "missing.json"))
    assert code == 5 and "missing.json" in err
    assert run(capsys, "bound", str(files["dir"] / "missing.json"))[0] == 5


def test_estimate(capsys, files):
    code, text, _ = run(capsys, "estimate", files["hadamard_k.json"], "--samples", "100000", "--seed", "42")
    rep = json.loads(text)
    assert code == 0 and set(rep) == {"mean", "std_error", "samples", "seed"}
    assert abs(rep["mean"] - (log(2) - 0.5)) <= 4 * rep["std_error"]
    rep = json.loads(run(capsys, "estimate", files["identity_k.json"], "--samples", "1000")[1])
    assert rep["mean"] == 0.0 and rep["std_error"] == 0.0


def test_estimate_workers_identical(capsys, files):
    a = run(capsys, "estimate", files["mixture.json"], "--samples", "9000", "--seed", "3", "--workers", "1")[1]
    b = run(capsys, "estimate", files["mixture.json"], "--samples", "9000", "--seed", "3", "--workers", "4")[1]
    assert a == b


def test_estimate_errors(capsys, files):
    assert run(capsys, "estimate", files["not_tp.json"])[0] == 3
    assert run(capsys, "estimate", files["garbled.json"])[0] == 2
    assert run(capsys, "estimate", files["hadamard_k.json"], "--samples", "50")[0] == 4


def test_bound(capsys, files):
    rep = json.loads(run(capsys, "bound", files["mixture.json"])[1])
    assert rep["unital"] is True
    assert rep["bound"] == pytest.approx(0.1503555363682672, abs=1e-12)
    rep = json.loads(run(capsys, "bound", files["hadamard_k.json"])[1])
    assert rep["bound"] == pytest.approx(log(2) - 0.5, abs=1e-15)
    code, out, err = run(capsys, "bound", files["damping.json"])
    assert code == 4 and out == "" and "unital" in err


def _read_csv(path):
    lines = path.read_bytes().decode().split("\n")
    assert lines[0] == "param,cgp" and lines[-1] == ""
    return np.array([[float(v) for v in ln.split(",")] for ln in lines[1:-1]])


def test_sweep_rotation_defaults(capsys, files):
    out = files["dir"] / "rot.csv"
    assert run(capsys, "sweep", "rotation", "--out", str(out))[0] == 0
    data = _read_csv(out)
    assert data.shape == (181, 2)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert data[0, 0] == 0.0 and data[-1, 0] == pi
    assert b"\r" not in out.read_bytes()


def test_sweep_partial_swap_defaults(capsys, files):
    out = files["dir"] / "ps.csv"
    run(capsys, "sweep", "partial-swap", "--out", str(out))
    data = _read_csv(out)
    assert data.shape == (101, 2)
    assert np.argmax(data[:, 1]) == 50


def test_sweep_custom_range(capsys, files):
    out = files["dir"] / "c.csv"
    assert run(capsys, "sweep", "rotation", "--from", "pi/4", "--to", "3pi/4", "--steps", "3", "--out", str(out))[0] == 0
    data = _read_csv(out)
    np.testing.assert_allclose(data[:, 0], [pi / 4, pi / 2, 3 * pi / 4])


@pytest.mark.parametrize(
    "extra",
    [["--from", "1", "--to", "0"], ["--steps", "1"], ["--from", "abc"]],
)
def test_sweep_bad_range(capsys, files, extra):
    assert run(capsys, "sweep", "rotation", *extra, "--out", str(files["dir"] / "z.csv"))[0] == 2


def test_sweep_partial_swap_outside_domain(capsys, files):
    assert run(capsys, "sweep", "partial-swap", "--to", "1.5", "--out", str(files["dir"] / "z.csv"))[0] == 2


def test_unwritable_paths(capsys, files):
    bad = str(files["dir"] / "no" / "such" / "dir" / "x")
    assert run(capsys, "sweep", "rotation", "--out", bad)[0] == 5
    assert run(capsys, "gate", "hadamard", "--out", bad)[0] == 5


@pytest.mark.parametrize("name", ["bogus", "rotation", "rotation:x", "fourier:0", "partial-swap:2"])
def test_gate_unknown_or_malformed(capsys, files, name):
    assert run(capsys, "gate", name, "--out", str(files["dir"] / "g.json"))[0] == 2


@pytest.mark.parametrize("name", ["identity", "hadamard", "rotation:0.7853", "partial-swap:0.5", "swap", "fourier:3"])
def test_gate_roundtrip(capsys, files, name):
    out = str(files["dir"] / "g.json")
    assert run(capsys, "gate", name, "--out", out)[0] == 0
    assert run(capsys, "exact", out)[0] == 0
    assert run(capsys, "gate", name, "--kraus", "--out", out)[0] == 0
    assert run(capsys, "bound", out)[0] == 0


def test_verify_passes_and_repeats(capsys):
    code, a, _ = run(capsys, "verify", "--seed", "0")
    assert code == 0
    reports = json.loads(a)
    assert all(r["passed"] for r in reports)
    assert run(capsys, "verify", "--seed", "0")[1] == a


def test_verify_negative_control(capsys, monkeypatch):
    from cgpkit import entropy

    real = entropy.subentropy
    monkeypatch.setattr(entropy, "subentropy", lambda lam: -real(lam))
    code, _, err = run(capsys, "verify", "--seed", "0", "--samples", "20000")
    assert code == 1 and "lemma_integral" in err


def _cli(*argv, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "cgpkit.cli", *argv], capture_output=True, env=full)


def test_seed_environment_variable(files):
    path = files["hadamard_k.json"]
    by_env = _cli("estimate", path, "--samples", "500", env={"CGPKIT_SEED": "17"}).stdout
    assert json.loads(by_env)["seed"] == 17
    assert by_env == _cli("estimate", path, "--samples", "500", "--seed", "17").stdout
    wins = _cli("estimate", path, "--samples", "500", "--seed", "5", env={"CGPKIT_SEED": "17"}).stdout
    assert json.loads(wins)["seed"] == 5
    bad = _cli("estimate", path, env={"CGPKIT_SEED": "x"})
    assert bad.returncode == 2

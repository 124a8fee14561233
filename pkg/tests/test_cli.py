import json
import os

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scl.cli import RunConfig, main, rational_function, write_report
from scl.linalg import save_matrix

U4 = np.diag([1, 1j, -1, -1j]).astype(complex)


@pytest.fixture
def unitary_file(tmp_path):
    p = tmp_path / "u.json"
    save_matrix(U4, p)
    return str(p)


@given(st.text(max_size=8), st.integers(-10, 10**6), st.sampled_from(["circle", "ellipse:1.2:1"]),
       st.dictionaries(st.sampled_from(["growth", "rho"]), st.floats(1e-12, 1.0)))
def test_run_config_round_trip(name, seed, curve, tol):
    cfg = RunConfig(command=name, curve=curve, seed=seed, tol=tol, params={"n": 3})
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_rational_function_is_restricted():
    f = rational_function("(z - 3) / (z + 5) + 2*z**2")
    assert f(1.0) == pytest.approx(-1 / 3 + 2)
    for bad in ("__import__('os')", "z.real", "abs(z)", "z if z else 1"):
        with pytest.raises(Exception):
            rational_function(bad)


def test_profile_exit_zero_and_report(unitary_file, tmp_path):
    out = tmp_path / "out"
    assert main(["profile", "--matrix", unitary_file, "--out", str(out)]) == 0
    doc = json.loads((out / "profile.json").read_text())
    assert doc["config"]["matrix"] == unitary_file
    assert abs(doc["result"]["C_inside"] - 1) <= 1e-8 and abs(doc["result"]["C_outside"] - 1) <= 1e-8
    assert (out / "profile.csv").exists()


def test_meansquare_jordan_exits_one(tmp_path):
    p = tmp_path / "j.json"
    save_matrix(np.array([[1, 1], [0, 1]], dtype=complex), p)
    assert main(["meansquare", "--matrix", str(p), "--out", str(tmp_path / "o")]) == 1


@pytest.mark.parametrize("argv", [
    ["profile", "--matrix", "/nonexistent.json"],
    ["profile", "--curve", "ellipse:x:1"],
    ["rho", "--tol", "nope=1"],
    ["bogus-verb"],
])
def test_input_errors_exit_two(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)] if argv[0] != "bogus-verb" else argv) == 2


def test_spectrum_off_curve_is_input_error(tmp_path):
    p = tmp_path / "m.json"
    save_matrix(np.diag([0.2, 1.0]), p)
    assert main(["profile", "--matrix", str(p), "--out", str(tmp_path / "o")]) == 2


def test_zoo_make_writes_matrix(tmp_path):
    o = tmp_path / "shift.json"
    assert main(["zoo", "make", "--kind", "shift", "--alpha", "1.4142", "--beta", "1.4142",
                 "--n", "11", "-o", str(o), "--out", str(tmp_path / "r")]) == 0
    from scl.linalg import load_matrix
    assert load_matrix(o).shape == (11, 11)


def test_config_file_round_trip(unitary_file, tmp_path):
    cfg = RunConfig(command="rho", matrix=unitary_file, out=str(tmp_path / "o"))
    p = tmp_path / "cfg.json"
    p.write_text(cfg.to_json())
    assert main(["rho", "--config", str(p)]) == 0
    assert json.loads((tmp_path / "o" / "rho.json").read_text())["config"] == json.loads(cfg.to_json())


def test_reports_are_deterministic(unitary_file, tmp_path):
    texts = []
    for k in range(2):
        out = tmp_path / f"o{k}"
        main(["charfn", "--matrix", unitary_file, "--out", str(out)])
        texts.append((out / "charfn.json").read_text())
    a, b = (json.loads(t) for t in texts)
    a["config"]["out"] = b["config"]["out"] = ""
    assert a == b


def test_write_report_is_atomic_and_clean(tmp_path):
    cfg = RunConfig(command="x", out=str(tmp_path))
    write_report(cfg, "r", {"v": np.float64(np.inf), "z": 1 + 2j, "a": np.arange(3)}, (("k", "v"), [(1, 0.1)]))
    assert sorted(os.listdir(tmp_path)) == ["r.csv", "r.json"]
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["result"] == {"v": "inf", "z": [1.0, 2.0], "a": [0, 1, 2]}
    assert (tmp_path / "r.csv").read_text() == "k,v\n1,0.1\n"

import csv
import io
import json
import math

import numpy as np
import pytest

from dirac_oscillator.cli import main, parse_range


def run_cli(argv, tmp_path, name="out.txt"):
    path = tmp_path / name
    status = main(argv + ["--output", str(path)])
    return status, path.read_bytes()


def read_csv(data: bytes):
    lines = [l for l in data.decode().splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_spectrum_flat_example(tmp_path):
    status, data = run_cli(["spectrum", "--alpha", "1", "--w", "1", "--lambda", "1", "--l", "1",
                            "--n", "0", "--mu", "0", "--A", "0", "--limit", "spin"], tmp_path)
    assert status == 0
    doc = json.loads(data)
    row = doc["rows"][0]
    assert row["positive_root"] == pytest.approx(math.sqrt(7), abs=1e-14)
    assert doc["meta"]["config"]["params"]["lambda"] == 1.0
    assert "version" in doc["meta"]


def test_json_round_trip_is_bit_exact(tmp_path):
    _, data = run_cli(["spectrum", "--mu", "0.037", "--A", "0.21", "--limit", "pseudospin",
                       "--lambda", "2"], tmp_path)
    doc = json.loads(data)
    again = json.dumps(doc, allow_nan=False, indent=1) + "\n"
    assert again.encode() == data
    row = doc["rows"][0]
    # infinite residuals of rejected roots become error records
    assert all(isinstance(v, (float, dict)) for v in (row[f"residual{i}"] for i in range(4)))


def test_validation_exit_code(tmp_path, capsys):
    assert main(["spectrum", "--alpha", "-1"]) == 2
    assert main(["coherent", "--xi", "0.8", "0.8"]) == 2
    assert main(["check", "--tol", "nonsense=1"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--limit", "sideways"])
    assert info.value.code == 2


def test_numerical_failure_exit_code(tmp_path):
    # printed pseudospin constant rejects every root
    status, data = run_cli(["spectrum", "--mu", "0.1", "--A", "0.3", "--lambda", "2",
                            "--limit", "pseudospin", "--c-variant", "printed"], tmp_path)
    assert status == 1
    assert json.loads(data)["rows"][0]["error"].startswith("NoPhysicalRoot")


def test_lower_component_pole_exit_code(tmp_path):
    # w = mu = 0 gives delta = 0, so no state can be built
    status, data = run_cli(["wavefunction", "--w", "0", "--format", "json"], tmp_path)
    assert status == 1
    assert "error" in json.loads(data)["rows"][0]


def test_empty_range_is_header_only(tmp_path):
    status, data = run_cli(["sweep", "--alpha", "0.5,1", "--mu", ""], tmp_path)
    assert status == 0
    text = data.decode().splitlines()
    assert text[0].startswith("#") and text[1].startswith("# columns")
    assert len(text) == 3 and read_csv(data) == []


def test_flat_sweep_passes(tmp_path):
    status, data = run_cli(["sweep", "--alpha", "0.01,0.1,0.5,1", "--w", "0.5,1,2",
                            "--lambda", "0,1,2", "--l", "0,1,2", "--n", "0:4:5"], tmp_path)
    rows = read_csv(data)
    assert status == 0 and len(rows) == 540
    for row in rows:
        a, w, lam, l, n = (float(row[k]) for k in ("alpha", "w", "lambda", "l", "n"))
        want = math.sqrt(1 + 2 * w * a * a * (2 * n + lam + l + 1))
        assert float(row["positive_root"]) == pytest.approx(want, abs=1e-10)
        assert row["error"] == ""


def test_sweep_continuity_across_mu_zero(tmp_path):
    _, data = run_cli(["sweep", "--mu=-0.002:0.002:41", "--A", "0.2"], tmp_path)
    roots = np.array([float(r["positive_root"]) for r in read_csv(data)])
    assert np.max(np.abs(np.diff(roots))) < 1e-3


def test_sweep_records_row_failures(tmp_path):
    status, data = run_cli(["sweep", "--alpha=-1,1"], tmp_path)
    rows = read_csv(data)
    assert status == 0
    assert rows[0]["error"].startswith("ValueError") and rows[1]["error"] == ""


def test_sweep_is_deterministic(tmp_path):
    argv = ["sweep", "--mu", "0:0.1:4", "--A", "0.1,0.3", "--n", "0,1"]
    assert run_cli(argv, tmp_path, "a")[1] == run_cli(argv, tmp_path, "b")[1]


def test_coherent_zero_label_matches_wavefunction(tmp_path):
    common = ["--mu", "0.1", "--A", "0.3", "--points", "50"]
    _, wf = run_cli(["wavefunction"] + common, tmp_path, "wf")
    _, co = run_cli(["coherent", "--xi", "0", "0"] + common, tmp_path, "co")
    wf_rows, co_rows = read_csv(wf), read_csv(co)
    for a, b in zip(wf_rows, co_rows):
        assert float(a["r"]) == float(b["r"])
        assert float(b["R1_re"]) == pytest.approx(float(a["R1"]), rel=1e-12, abs=1e-300)
        assert float(b["R1_im"]) == 0.0


def test_evolve_rows(tmp_path):
    status, data = run_cli(["evolve", "--xi", "0.3", "0.1", "--tau", "0", "1.5",
                            "--points", "10"], tmp_path)
    rows = read_csv(data)
    assert status == 0 and len(rows) == 20
    assert {r["tau"] for r in rows} == {"0", "1.5"}


def test_check_tolerance_override(tmp_path):
    status, data = run_cli(["check", "--suite", "flat"], tmp_path)
    assert status == 0 and data.decode().startswith("PASS flat:")
    status, data = run_cli(["check", "--suite", "flat", "--tol", "flat=1e-300"], tmp_path)
    assert status == 1 and b"FAIL flat:" in data


def test_parse_range():
    assert parse_range("0:1:3") == (0.0, 0.5, 1.0)
    assert parse_range("1,2", integer=True) == (1, 2)
    assert parse_range("") == ()
    with pytest.raises(ValueError):
        parse_range("0:1")

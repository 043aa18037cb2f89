"""One test per acceptance criterion; each prints a CRITERION pass/fail line."""

import time

from dirac_oscillator import checks
from dirac_oscillator.cli import main


def _run(suite):
    start = time.perf_counter()
    results = checks.run_suites([suite])
    return results, time.perf_counter() - start


def _summary(results, elapsed=None):
    worst = [r for r in results if not r.passed] or results
    text = "; ".join(r.line() for r in worst[:3])
    if elapsed is not None:
        text += f" [{elapsed:.2f} s]"
    return text


def _gate(record, number, title, results, elapsed=None, limit=None):
    ok = all(r.passed for r in results) and (limit is None or elapsed < limit)
    record(number, title, ok, _summary(results, elapsed))
    for r in results:
        assert r.passed, r.line()
    if limit is not None:
        assert elapsed < limit, f"runtime {elapsed:.2f} s exceeds {limit} s"


def test_criterion_01_flat_regression(record_criterion):
    results, elapsed = _run("flat")
    _gate(record_criterion, 1, "flat-space spectrum within 1e-10", results, elapsed, 1.0)


def test_criterion_02_quartic_oracle(record_criterion):
    results, elapsed = _run("quartic")
    _gate(record_criterion, 2, "Ferrari vs oracle and Vieta < 1e-9", results, elapsed, 5.0)


def test_criterion_03_implicit_residuals(record_criterion):
    results, _ = _run("residuals")
    _gate(record_criterion, 3, "curved accepted roots |residual| < 1e-8", results)


def test_criterion_04_su11_closure(record_criterion):
    results, elapsed = _run("su11")
    _gate(record_criterion, 4, "su(1,1) defects < 1e-3, ratio in [3.8, 4.2]", results,
          elapsed, 10.0)


def test_criterion_05_eigenvalue_ladder(record_criterion):
    results, _ = _run("ladder")
    _gate(record_criterion, 5, "<B3> = k + n within 5e-3, T- ground < 1e-3", results)


def test_criterion_06_coherent_series_vs_closed(record_criterion):
    results, elapsed = _run("coherent")
    _gate(record_criterion, 6, "coherent series vs closed form < 1e-8 (n_max 200)", results,
          elapsed, 30.0)


def test_criterion_07_displacement_oracle(record_criterion):
    results, _ = _run("displacement")
    _gate(record_criterion, 7, "series / expm / disentangled agree < 1e-9", results)


def test_criterion_08_time_evolution(record_criterion):
    results, _ = _run("evolution")
    _gate(record_criterion, 8, "evolution exact laws and matrix oracle < 1e-7", results)


def test_criterion_09_normalization(record_criterion):
    results, _ = _run("normalization")
    _gate(record_criterion, 9, "normalization vs Gamma integral < 1e-8", results)


def test_criterion_10_determinism(record_criterion, tmp_path):
    outputs = {}
    for tag in ("a", "b"):
        check_path = tmp_path / f"check_{tag}.txt"
        sweep_path = tmp_path / f"sweep_{tag}.csv"
        main(["check", "--suite", "all", "--output", str(check_path)])
        main(["sweep", "--alpha", "0.5,1", "--mu", "0:0.1:5", "--A", "0,0.3",
              "--lambda", "1,2", "--n", "0:2:3", "--output", str(sweep_path)])
        main(["sweep", "--mu", "0.05", "--A", "0.2", "--limit", "pseudospin", "--format",
              "json", "--output", str(sweep_path) + ".json"])
        outputs[tag] = (check_path.read_bytes(), sweep_path.read_bytes(),
                        (tmp_path / f"sweep_{tag}.csv.json").read_bytes())
    same = outputs["a"] == outputs["b"]
    record_criterion(10, "byte-identical check and sweep outputs", same,
                     f"check={len(outputs['a'][0])} B, sweep={len(outputs['a'][1])} B")
    assert same

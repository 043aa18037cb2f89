"""Verification suites shared by the ``check`` command and the acceptance tests.

Each suite returns a list of :class:`CheckResult`; a result carries the
measured value next to its bound so reports are auditable. Reports contain no
timings, which keeps them byte-identical between runs.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import coherent as cs
from . import su11
from .quartic import (QuarticCoefficients, match_distance, oracle_roots, solve_quartic,
                      vieta_defects)
from .spectrum import (ModelParams, SymmetryLimit, flat_spectrum, pseudospin_c_diagnostic,
                       residual, solve_spectrum)
from .wavefunctions import RadialState, normalize

DEFAULT_TOLERANCES = {
    "flat": 1e-10,
    "quartic": 1e-9,
    "residual": 1e-8,
    "su11_defect": 1e-3,
    "su11_ratio_lo": 3.8,
    "su11_ratio_hi": 4.2,
    "ladder": 5e-3,
    "annihilation": 1e-3,
    "coherent": 1e-8,
    "displacement": 1e-9,
    "evolution": 1e-7,
    "normalization": 1e-8,
    "quadrature": 1e-9,
}


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    value: float
    bound: float
    passed: bool
    comparison: str = "<"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.suite}:{self.name} measured={self.value:.6e} "
                f"{self.comparison} bound={self.bound:.6e}")

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "value": self.value,
                "bound": self.bound, "passed": self.passed, "comparison": self.comparison}


def _below(suite, name, value, bound) -> CheckResult:
    value = float(value)
    return CheckResult(suite, name, value, float(bound), bool(value < bound))


def _at_least(suite, name, value, bound) -> CheckResult:
    value = float(value)
    return CheckResult(suite, name, value, float(bound), bool(value >= bound), ">=")


# Representative curved-space couplings; the two contexts have different k.
SPIN_PARAMS = ModelParams(alpha=1.0, mu=0.1, w=1.0, A=0.3, lam=1, l=1)
PSEUDOSPIN_PARAMS = ModelParams(alpha=1.0, mu=0.1, w=1.0, A=0.3, lam=1, l=0)


def flat_grid():
    """Flat-space grid: alpha, w, lambda, l, n with mu = A = 0."""
    for alpha, w, lam, l, n in itertools.product((0.01, 0.1, 0.5, 1.0), (0.5, 1.0, 2.0),
                                                 (0, 1, 2), (0, 1, 2), range(5)):
        yield ModelParams(alpha=alpha, w=w, lam=lam, l=l, n=n)


def suite_flat(tol=DEFAULT_TOLERANCES) -> list:
    worst, missing, count = 0.0, 0, 0
    for params in flat_grid():
        count += 1
        sol = solve_spectrum(params, SymmetryLimit.SPIN, raise_on_empty=False)
        if sol.positive_root is None:
            missing += 1
            continue
        worst = max(worst, abs(sol.positive_root - flat_spectrum(params)))
    return [
        _below("flat", f"max_abs_error[{count} tuples]", worst, tol["flat"]),
        _below("flat", "tuples_without_positive_root", missing, 1),
    ]


def suite_quartic(tol=DEFAULT_TOLERANCES, n_samples: int = 10_000, seed: int = 20240611) -> list:
    rng = np.random.default_rng(seed)
    triples = rng.uniform(-10.0, 10.0, size=(n_samples, 3))
    worst_match, worst_vieta, fallbacks = 0.0, 0.0, 0
    for p, q, r in triples:
        c = QuarticCoefficients(p, q, r)
        roots, method = solve_quartic(c)
        fallbacks += method != "ferrari"
        worst_match = max(worst_match, match_distance(roots, oracle_roots(c)))
        worst_vieta = max(worst_vieta, max(vieta_defects(roots, c)))
    return [
        _below("quartic", f"ferrari_vs_oracle[{n_samples}]", worst_match, tol["quartic"]),
        _below("quartic", "vieta_defect", worst_vieta, tol["quartic"]),
        CheckResult("quartic", "oracle_fallbacks", float(fallbacks), float(n_samples), True, "of"),
    ]


def curved_grid():
    """Curved-space tuples with mu > 0 and A > 0 for both limits.

    ``l`` follows the usual pairing: ``l = lambda`` (spin) and
    ``lbar = lambda - 1`` (pseudospin).
    """
    for limit in (SymmetryLimit.SPIN, SymmetryLimit.PSEUDOSPIN):
        for alpha, mu, w, lam, A, n in itertools.product((0.5, 1.0), (0.01, 0.05, 0.1),
                                                         (0.5, 1.0, 2.0), (1, 2), (0.1, 0.3),
                                                         (0, 1, 2)):
            l = lam if limit is SymmetryLimit.SPIN else lam - 1
            yield limit, ModelParams(alpha, mu, w, A, lam, l, n)


def suite_residuals(tol=DEFAULT_TOLERANCES, screen: float = 1e-6) -> list:
    """Residuals of accepted roots, screened at a looser ``screen`` so the bound is not circular."""
    worst, empty, count = 0.0, 0, 0
    printed_ok = rederived_ok = neither = pseudo_count = 0
    for limit, params in curved_grid():
        count += 1
        sol = solve_spectrum(params, limit, tol=screen, raise_on_empty=False)
        if not sol.physical:
            empty += 1
        for eps in sol.accepted:
            worst = max(worst, abs(residual(params, limit, eps)))
        if limit is SymmetryLimit.PSEUDOSPIN:
            pseudo_count += 1
            diag = pseudospin_c_diagnostic(params, tol["residual"])
            printed_ok += diag["printed"]["passes"]
            rederived_ok += diag["rederived"]["passes"]
            neither += not (diag["printed"]["passes"] or diag["rederived"]["passes"])
    return [
        _below("residuals", f"max_accepted_residual[{count} tuples]", worst, tol["residual"]),
        _below("residuals", "tuples_without_accepted_root", empty, 1),
        CheckResult("residuals", "pseudospin_c_printed_passes", float(printed_ok),
                    float(pseudo_count), True, "of"),
        CheckResult("residuals", "pseudospin_c_rederived_passes", float(rederived_ok),
                    float(pseudo_count), True, "of"),
        _below("residuals", "pseudospin_c_neither_passes", neither, 1),
    ]


def _bumps():
    return (
        lambda x: np.exp(-(x - 15.0) ** 2 / 6.0),
        lambda x: (x - 12.0) * np.exp(-(x - 14.0) ** 2 / 8.0),
        lambda x: np.exp(-(x - 18.0) ** 2 / 10.0) * np.cos(x),
    )


def _contexts():
    return (("spin", su11.OperatorContext.from_params(SPIN_PARAMS, SymmetryLimit.SPIN)),
            ("pseudospin", su11.OperatorContext.from_params(PSEUDOSPIN_PARAMS,
                                                            SymmetryLimit.PSEUDOSPIN)))


def _defects(ctx, func, n_points: int) -> np.ndarray:
    f = su11.GridFunction.from_callable(su11.Grid.uniform(n_points, 40.0), func)
    raising, closure = su11.commutator_defect(ctx, f)
    return np.array([raising, closure, su11.lowering_commutator_defect(ctx, f),
                     su11.casimir_defect(ctx, f)])


def suite_su11(tol=DEFAULT_TOLERANCES, n_points: int = su11.DEFAULT_POINTS) -> list:
    labels = ("raising_commutator", "closure_commutator", "lowering_commutator", "casimir")
    out = []
    for cname, ctx in _contexts():
        for j, func in enumerate(_bumps()):
            coarse = _defects(ctx, func, n_points)
            fine = _defects(ctx, func, 2 * n_points)
            for label, c, f in zip(labels, coarse, fine):
                tag = f"{cname}/f{j}/{label}"
                out.append(_below("su11", tag, c, tol["su11_defect"]))
                ratio = c / f
                out.append(CheckResult("su11", tag + "_ratio", float(ratio), tol["su11_ratio_lo"],
                                       bool(tol["su11_ratio_lo"] <= ratio <= tol["su11_ratio_hi"]),
                                       f"in [{tol['su11_ratio_lo']}, {tol['su11_ratio_hi']}]"))
    return out


def suite_ladder(tol=DEFAULT_TOLERANCES) -> list:
    out = []
    for cname, ctx in _contexts():
        worst = 0.0
        for n in range(6):
            f = su11.eigenfunction(ctx, su11.Grid.for_level(n), n)
            worst = max(worst, abs(su11.expectation_B3(ctx, f) - (ctx.k + n)))
        out.append(_below("ladder", f"{cname}/B3_expectation_n<=5", worst, tol["ladder"]))
        f0 = su11.eigenfunction(ctx, su11.Grid.for_level(0), 0)
        rel = su11.apply_Tminus(ctx, f0).norm() / f0.norm()
        out.append(_below("ladder", f"{cname}/Tminus_ground", rel, tol["annihilation"]))
    return out


def _coherent_bases():
    return (("spin", RadialState.solve(SPIN_PARAMS, SymmetryLimit.SPIN)),
            ("pseudospin", RadialState.solve(PSEUDOSPIN_PARAMS, SymmetryLimit.PSEUDOSPIN)))


def suite_coherent(tol=DEFAULT_TOLERANCES, n_max: int = 200) -> list:
    out = []
    for cname, state in _coherent_bases():
        for k in (0.75, 1.25, 2.5):
            for mod in (0.3, 0.6, 0.9):
                w1 = w2 = 0.0
                for j in range(8):
                    xi = mod * cmath.exp(2j * math.pi * j / 8)
                    p = cs.CoherentParams.from_state(state, xi, k=k)
                    r = cs.coherent_grid(p)
                    w1 = max(w1, cs.sup_relative_deviation(cs.coherent_R1_series(p, r, n_max),
                                                           cs.coherent_R1_closed(p, r)))
                    w2 = max(w2, cs.sup_relative_deviation(cs.coherent_R2_series(p, r, n_max),
                                                           cs.coherent_R2_closed(p, r)))
                out.append(_below("coherent", f"{cname}/k={k}/|xi|={mod}/R1", w1, tol["coherent"]))
                out.append(_below("coherent", f"{cname}/k={k}/|xi|={mod}/R2", w2, tol["coherent"]))
    return out


def suite_displacement(tol=DEFAULT_TOLERANCES, dim: int = 256) -> list:
    out = []
    for k in (0.75, 1.25, 2.5):
        rep = cs.TruncatedRep.build(k, dim)
        worst = naive = tail = 0.0
        for mod in (0.2, 0.5, 0.8):
            for j, phase in enumerate((0.3, 2.2)):
                theta = mod * cmath.exp(1j * phase)
                report = cs.matrix_displacement_oracle(rep, theta, check_truncation=j == 0)
                worst = max(worst, report.worst)
                tail = max(tail, report.truncation_change)
                naive = max(naive, report.naive_label_mismatch(k))
        out.append(_below("displacement", f"k={k}/pairwise_max", worst, tol["displacement"]))
        out.append(_below("displacement", f"k={k}/truncation_change", tail, 1e-10))
        # Informational: using theta itself as the series label is visibly wrong.
        out.append(CheckResult("displacement", f"k={k}/series_at_theta_mismatch", naive,
                               tol["displacement"], True, "info vs"))
    return out


def suite_evolution(tol=DEFAULT_TOLERANCES) -> list:
    out = []
    taus = (0.0, 0.3, 1.7, math.pi, 5.0)
    comp = phase_ok = 0
    mod_drift = 0.0
    for cname, state in _coherent_bases():
        for mod in (0.3, 0.8):
            p0 = cs.CoherentParams.from_state(state, mod * cmath.exp(0.4j))
            r = cs.coherent_grid(p0)
            worst = 0.0
            ident = np.array_equal(cs.evolved_R1(p0, r), cs.coherent_R1_closed(p0, r)) and \
                np.array_equal(cs.evolved_R2(p0, r), cs.coherent_R2_closed(p0, r))
            phase_ok += not ident
            for t1, t2 in itertools.product(taus, taus):
                a = cs.evolve(cs.evolve(p0, t1), t2)
                b = cs.evolve(p0, t1 + t2)
                comp += not (a.xi_t == b.xi_t and a.phase == b.phase)
            for tau in taus:
                p = cs.evolve(p0, tau)
                mod_drift = max(mod_drift, abs(abs(p.xi_t) - abs(p0.xi)) / abs(p0.xi))
                upper, lower, _ = cs.matrix_evolution_oracle(p, r)
                worst = max(worst, cs.sup_relative_deviation(upper, cs.evolved_R1(p, r)),
                            cs.sup_relative_deviation(lower, cs.evolved_R2(p, r)))
            out.append(_below("evolution", f"{cname}/|xi|={mod}/vs_matrix_oracle", worst,
                              tol["evolution"]))
    out.append(_below("evolution", "tau0_identity_mismatches", phase_ok, 1))
    out.append(_below("evolution", "composition_mismatches", comp, 1))
    out.append(_below("evolution", "label_modulus_drift", mod_drift, 4 * np.finfo(float).eps))
    return out


def suite_normalization(tol=DEFAULT_TOLERANCES) -> list:
    out = []
    for cname, state in _coherent_bases():
        numeric = normalize(state)
        refined = normalize(state, n_quad=64)
        out.append(_below("normalization", f"{cname}/vs_gamma_integral",
                          abs(numeric - state.norm) / state.norm, tol["normalization"]))
        out.append(_below("normalization", f"{cname}/quadrature_doubling",
                          abs(refined - numeric) / numeric, tol["quadrature"]))
    return out


SUITES = {
    "flat": suite_flat,
    "quartic": suite_quartic,
    "residuals": suite_residuals,
    "su11": suite_su11,
    "ladder": suite_ladder,
    "coherent": suite_coherent,
    "displacement": suite_displacement,
    "evolution": suite_evolution,
    "normalization": suite_normalization,
}


def run_suites(names, tolerances: dict | None = None) -> list:
    """Run the named suites (``"all"`` for every one) in a fixed order."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise KeyError(f"unknown tolerance names: {sorted(unknown)}")
        tol.update(tolerances)
    names = list(SUITES) if "all" in names else list(names)
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    results = []
    for name in names:
        results.extend(SUITES[name](tol))
    return results

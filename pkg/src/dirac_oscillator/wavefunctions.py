"""Closed-form radial eigenfunctions for both symmetry limits.

The upper component is

    R1_n(r) = N (sqrt(delta) r)**(2k - 1/2) exp(-delta r**2 / 2) L_n^{2k-1}(delta r**2)

and the lower component follows from the first-order radial relation,

    R2_n(r) = alpha / ((1 + eps) r) * (sqrt(delta) r)**(2k - 1/2) exp(-delta r**2 / 2)
              * [-2 delta r**2 L_{n-1}^{2k}(x) + (b_lin r**2 + b_const) L_n^{2k-1}(x)]

with ``x = delta r**2``, ``b_lin = w + mu alpha**2 lambda - delta`` and
``b_const = 2 gamma + 1/2 + A + lambda``. ``gamma`` defaults to ``k - 1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateEnergy, DomainError, TailNotConverged
from .spectrum import (ModelParams, SpectrumSolution, SymmetryLimit, bargmann_index,
                       solve_spectrum)
from .special import laguerre

#: ``|1 + eps|`` below which the lower component is treated as singular.
POLE_TOL = 1e-12


@dataclass(frozen=True)
class RadialState:
    """One bound state with its energy, Bargmann index, width and normalization.

    Build it with :meth:`from_solution` so that ``eps`` and ``delta`` are a
    consistent pair. :meth:`frozen` skips that check and is meant for
    diagnostics at a fixed width (e.g. orthogonality between levels).
    """

    params: ModelParams
    limit: SymmetryLimit
    eps: float
    k: float
    delta: float
    norm: float
    gamma: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "limit", SymmetryLimit.parse(self.limit))
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not self.norm > 0:
            raise DomainError(f"norm must be positive, got {self.norm}")

    @classmethod
    def from_solution(cls, solution: SpectrumSolution, index: int | None = None,
                      gamma: float | None = None) -> "RadialState":
        """State for an accepted root; ``index`` defaults to the positive particle root."""
        if index is None:
            eps = solution.positive_root
            if eps is None:
                raise DomainError("solution has no accepted positive root")
        else:
            if index not in solution.physical:
                raise DomainError(f"root {index} was not accepted: {solution.reasons[index]}")
            eps = solution.roots[index].real
        delta = solution.derived.delta_of(eps)
        if not delta > 0:
            raise DomainError(f"delta({eps}) = {delta} is not positive")
        k = solution.derived.k
        n = solution.params.n
        return cls(solution.params, solution.limit, eps, k, delta,
                   analytic_norm(n, k, delta), gamma)

    @classmethod
    def solve(cls, params: ModelParams, limit=SymmetryLimit.SPIN, **kwargs) -> "RadialState":
        """Solve the spectrum and take the positive particle root."""
        return cls.from_solution(solve_spectrum(params, limit, **kwargs))

    @classmethod
    def frozen(cls, params: ModelParams, limit, eps: float, delta: float,
               gamma: float | None = None) -> "RadialState":
        """State at a prescribed ``(eps, delta)`` pair, not checked against the spectrum."""
        limit = SymmetryLimit.parse(limit)
        k = bargmann_index(params, limit)
        return cls(params, limit, eps, k, delta, analytic_norm(params.n, k, delta), gamma)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def gamma_eff(self) -> float:
        return self.k - 0.5 if self.gamma is None else self.gamma

    def with_level(self, n: int) -> "RadialState":
        """Same ``k``, ``delta`` and ``eps`` at level ``n`` (frozen-width diagnostic)."""
        return replace(self, params=self.params.with_n(n),
                       norm=analytic_norm(n, self.k, self.delta))


def analytic_norm(n: int, k: float, delta: float) -> float:
    """``N`` with ``int_0^inf |R1_n|**2 dr = 1``, i.e. ``sqrt(2 sqrt(delta) n! / Gamma(n + 2k))``."""
    return math.exp(0.5 * (math.log(2.0) + 0.5 * math.log(delta)
                           + gammaln(n + 1) - gammaln(n + 2 * k)))


def _check_r(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial wavefunctions need r > 0")
    return r


def _out(v):
    return v[()] if np.ndim(v) == 0 else v


def upper_profile(n: int, k: float, delta: float, r) -> np.ndarray:
    """Unnormalized ``(sqrt(delta) r)**(2k - 1/2) exp(-delta r**2/2) L_n^{2k-1}(delta r**2)``."""
    r = _check_r(r)
    x = delta * r * r
    log_w = (2 * k - 0.5) * np.log(np.sqrt(delta) * r) - 0.5 * x
    return _out(np.exp(log_w) * laguerre(n, 2 * k - 1, x))


def lower_coefficients(params: ModelParams, delta: float, k: float,
                       gamma: float | None = None) -> tuple:
    """``(b_lin, b_const)`` of the lower-component bracket."""
    g = k - 0.5 if gamma is None else gamma
    b_lin = params.w + params.mu * params.alpha ** 2 * params.lam - delta
    b_const = 2 * g + 0.5 + params.A + params.lam
    return b_lin, b_const


def lower_profile(n: int, k: float, delta: float, r, alpha: float, eps: float,
                  b_lin: float, b_const: float) -> np.ndarray:
    """Unnormalized lower component; ``L_{-1}`` is zero so ``n = 0`` has no first term."""
    if abs(1.0 + eps) < POLE_TOL:
        raise DegenerateEnergy(f"lower component has a pole at eps = -1 (eps={eps})")
    r = _check_r(r)
    x = delta * r * r
    log_w = (2 * k - 0.5) * np.log(np.sqrt(delta) * r) - 0.5 * x
    bracket = (-2.0 * delta * r * r * laguerre(n - 1, 2 * k, x)
               + (b_lin * r * r + b_const) * laguerre(n, 2 * k - 1, x))
    return _out(alpha / ((1.0 + eps) * r) * np.exp(log_w) * bracket)


def eval_R1(state: RadialState, r):
    """Normalized upper radial component at ``r > 0``."""
    return state.norm * upper_profile(state.n, state.k, state.delta, r)


def eval_R2(state: RadialState, r):
    """Lower radial component at ``r > 0``, with the same ``N`` as :func:`eval_R1`.

    Raises
    ------
    DegenerateEnergy
        If ``|1 + eps| < 1e-12``.
    """
    b_lin, b_const = lower_coefficients(state.params, state.delta, state.k, state.gamma)
    return state.norm * lower_profile(state.n, state.k, state.delta, r,
                                      state.params.alpha, state.eps, b_lin, b_const)


def first_order_image(state: RadialState, r, h: float = 1e-4) -> np.ndarray:
    """``alpha/(1+eps) (d/dr + (lambda + A)/r + (w + alpha**2 lambda mu) r) R1`` by central differences.

    Independent route to :func:`eval_R2` in the spin limit.
    """
    if abs(1.0 + state.eps) < POLE_TOL:
        raise DegenerateEnergy(f"pole at eps = -1 (eps={state.eps})")
    r = _check_r(r)
    p = state.params
    d1 = (eval_R1(state, r + h) - eval_R1(state, r - h)) / (2 * h)
    coupling = (p.lam + p.A) / r + (p.w + p.alpha ** 2 * p.lam * p.mu) * r
    return p.alpha / (1.0 + state.eps) * (d1 + coupling * eval_R1(state, r))


def gauss_legendre_integral(func, a: float, b: float, n_quad: int = 32,
                            n_panels: int = 32) -> float:
    """Composite Gauss-Legendre quadrature of ``func`` over ``[a, b]``."""
    nodes, weights = np.polynomial.legendre.leggauss(n_quad)
    edges = np.linspace(a, b, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals = np.asarray(func(pts)).reshape(n_panels, n_quad)
    return float(np.sum(half[:, None] * weights[None, :] * vals))


def default_cutoff(n: int, k: float, delta: float) -> float:
    """Radius at which ``delta r**2 = 80 + 8n + 4k``, far into the Gaussian tail."""
    return math.sqrt((80.0 + 8.0 * n + 4.0 * k) / delta)


def normalization_constant(func, r_max: float, n_quad: int = 32, n_panels: int = 32,
                           tail_tol: float = 1e-12) -> float:
    """``N`` with ``int_0^r_max |N func|**2 dr = 1``.

    The integral is also taken to ``2 r_max`` with proportionally more panels;
    a relative change above ``tail_tol`` means ``r_max`` is too small.

    Raises
    ------
    TailNotConverged
    """
    dens = lambda r: np.abs(func(r)) ** 2
    inner = gauss_legendre_integral(dens, 0.0, r_max, n_quad, n_panels)
    outer = gauss_legendre_integral(dens, 0.0, 2.0 * r_max, n_quad, 2 * n_panels)
    if not inner > 0:
        raise TailNotConverged(f"non-positive norm integral {inner}")
    if abs(outer - inner) > tail_tol * inner:
        raise TailNotConverged(
            f"tail mass {abs(outer - inner) / inner:.3e} beyond r_max={r_max} exceeds {tail_tol}"
        )
    return 1.0 / math.sqrt(inner)


def normalize(state: RadialState, r_max: float | None = None, n_quad: int = 32) -> float:
    """Numerical normalization constant of the state's upper component.

    Parameters
    ----------
    state : RadialState
    r_max : float, optional
        Integration cutoff; defaults to :func:`default_cutoff`.
    n_quad : int
        Gauss-Legendre nodes per panel.
    """
    if r_max is None:
        r_max = default_cutoff(state.n, state.k, state.delta)
    profile = lambda r: upper_profile(state.n, state.k, state.delta, np.maximum(r, 1e-300))
    return normalization_constant(profile, r_max, n_quad)


def count_nodes(values, rel_tol: float = 1e-10) -> int:
    """Sign changes of a sampled real function, ignoring samples below ``rel_tol * max``."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > rel_tol * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))


def overlap_matrix(state: RadialState, n_max: int, r_max: float | None = None,
                   n_quad: int = 48) -> np.ndarray:
    """``int R1_n R1_m dr`` for ``n, m <= n_max`` at the state's frozen ``(k, delta)``."""
    if r_max is None:
        r_max = default_cutoff(n_max, state.k, state.delta)
    nodes, weights = np.polynomial.legendre.leggauss(n_quad)
    n_panels = 32
    edges = np.linspace(0.0, r_max, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wts = (half[:, None] * weights[None, :]).ravel()
    rows = np.array([eval_R1(state.with_level(n), pts) for n in range(n_max + 1)])
    return (rows * wts[None, :]) @ rows.T


def sigma(params: ModelParams, limit=SymmetryLimit.SPIN) -> float:
    """``sqrt((l + 1/2)**2 + A(2 lambda + A +- 1)) / 2``; ``k = 1/2 + sigma`` must hold.

    ``+1`` in the spin limit, ``-1`` in the pseudospin limit (see
    :func:`~dirac_oscillator.spectrum.bargmann_index`).
    """
    limit = SymmetryLimit.parse(limit)
    A, lam, l = params.A, params.lam, params.l
    shift = 1.0 if limit is SymmetryLimit.SPIN else -1.0
    return math.sqrt((l + 0.5) ** 2 + A * (2 * lam + A + shift)) / 2.0

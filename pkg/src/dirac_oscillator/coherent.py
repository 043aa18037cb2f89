"""Perelomov su(1,1) coherent states of the radial problem and their time evolution.

The coherent state with label ``xi`` (``|xi| < 1``) has expansion coefficients

    c_n = (1 - |xi|**2)**k sqrt(Gamma(n + 2k) / (n! Gamma(2k))) xi**n

over the normalized eigenfunctions at a frozen width ``delta``. Summing with the
Laguerre generating function gives closed forms for both spinor components.
Evolution under ``exp(-i B3 tau / hbar)`` rotates the label,
``xi -> xi exp(-i tau / hbar)``, and multiplies by ``exp(-i k tau / hbar)``.

The matrix oracle works in a truncated discrete-series basis. There the
displacement ``exp(theta K+ - conj(theta) K-)`` with ``theta = |theta| e^{i phi}``
produces the series above at ``zeta = e^{i phi} tanh|theta|``, so the label of
the series and closed forms is ``zeta``, not ``theta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DegenerateEnergy, DomainError, TruncationNotConverged
from .special import laguerre_function_table
from .spectrum import SymmetryLimit
from .wavefunctions import POLE_TOL, RadialState, analytic_norm, lower_coefficients


@dataclass(frozen=True)
class CoherentParams:
    """Label, representation and lower-component data of one coherent state.

    ``xi`` is the label at ``tau = 0``; ``tau`` is the accumulated fictitious
    time, so the current label is :attr:`xi_t`. ``alpha``, ``eps``,
    ``b_lin`` and ``b_const`` only enter the lower component; ``b_const``
    defaults to ``2k - 1/2`` (``gamma = k - 1/2`` with ``A = lambda = 0``).
    """

    k: float
    xi: complex
    delta: float = 1.0
    eps: float = 0.0
    tau: float = 0.0
    hbar: float = 1.0
    alpha: float = 1.0
    b_lin: float = 0.0
    b_const: float | None = None
    limit: SymmetryLimit = SymmetryLimit.SPIN

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "limit", SymmetryLimit.parse(self.limit))
        if not self.k > 0.5:
            raise DomainError(f"Bargmann index must exceed 1/2, got {self.k}")
        if not abs(self.xi) < 1.0:
            raise DomainError(f"coherent label needs |xi| < 1, got |xi|={abs(self.xi)}")
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if self.b_const is None:
            object.__setattr__(self, "b_const", 2.0 * self.k - 0.5)

    @classmethod
    def from_state(cls, state: RadialState, xi: complex, tau: float = 0.0,
                   hbar: float = 1.0, k: float | None = None) -> "CoherentParams":
        """Coherent state on the ladder of ``state`` (its ``k``, ``delta`` and ``eps``).

        ``k`` overrides the Bargmann index, e.g. to probe other
        representations at the same width and couplings.
        """
        k = state.k if k is None else k
        b_lin, b_const = lower_coefficients(state.params, state.delta, k, state.gamma)
        return cls(k, xi, state.delta, state.eps, tau, hbar, state.params.alpha,
                   b_lin, b_const, state.limit)

    @property
    def xi_t(self) -> complex:
        """Label after evolution for ``tau``: ``xi exp(-i tau / hbar)``."""
        return self.xi * cmath.exp(-1j * self.tau / self.hbar)

    @property
    def phase(self) -> complex:
        """Global phase ``exp(-i k tau / hbar)`` from the ground-state energy."""
        return cmath.exp(-1j * self.k * self.tau / self.hbar)

    def at_label(self, xi: complex) -> "CoherentParams":
        return replace(self, xi=xi, tau=0.0)


def evolve(p: CoherentParams, dtau: float) -> CoherentParams:
    """Evolve by a further ``dtau``; composes additively in the accumulated time."""
    return replace(p, tau=p.tau + dtau)


def perelomov_expansion(p: CoherentParams, n_max: int) -> np.ndarray:
    """Coefficients ``c_0 .. c_{n_max}`` of the label ``p.xi`` (the ``tau = 0`` state)."""
    return _expansion(p.k, p.xi, n_max)


def _expansion(k: float, xi: complex, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1)
    mod = abs(xi)
    log_mag = 0.5 * (gammaln(n + 2 * k) - gammaln(n + 1) - gammaln(2 * k))
    log_mag = log_mag + k * math.log1p(-mod * mod)
    if mod == 0.0:
        out = np.zeros(n_max + 1, dtype=complex)
        out[0] = math.exp(log_mag[0])
        return out
    log_mag = log_mag + n * math.log(mod)
    return np.exp(log_mag) * np.exp(1j * n * cmath.phase(xi))


def evolved_expansion(p: CoherentParams, n_max: int) -> np.ndarray:
    """Coefficients of the evolved state, global phase included."""
    return p.phase * _expansion(p.k, p.xi_t, n_max)


def _check_r(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("coherent radial functions need r > 0")
    return r


def _pole_check(p: CoherentParams):
    if abs(1.0 + p.eps) < POLE_TOL:
        raise DegenerateEnergy(f"lower component has a pole at eps = -1 (eps={p.eps})")


def _closed_upper(p: CoherentParams, xi: complex, r: np.ndarray) -> np.ndarray:
    if xi == 1:
        raise DomainError("closed form is singular at xi = 1")
    k, delta = p.k, p.delta
    x = delta * r * r
    pref = analytic_norm(0, k, delta) / delta ** 0.25
    base = (delta * (1.0 - abs(xi) ** 2) / (1.0 - xi) ** 2) ** k
    return pref * base * r ** (2 * k - 0.5) * np.exp(0.5 * x * (xi + 1.0) / (xi - 1.0))


def _closed_lower(p: CoherentParams, xi: complex, r: np.ndarray) -> np.ndarray:
    _pole_check(p)
    shift = xi / (1.0 - xi)  # sum xi**n L_{n-1}^{2k} over the generating function of L_n^{2k-1}
    bracket = -2.0 * p.delta * r * r * shift + p.b_lin * r * r + p.b_const
    return p.alpha / ((1.0 + p.eps) * r) * _closed_upper(p, xi, r) * bracket


def coherent_R1_closed(p: CoherentParams, r):
    """Closed-form upper component of the coherent state with label ``p.xi``.

    Raises
    ------
    DomainError
        At ``xi = 1`` or for ``r <= 0``.
    """
    return _closed_upper(p, p.xi, _check_r(r))


def coherent_R2_closed(p: CoherentParams, r):
    """Closed-form lower component; the ``L_{n-1}^{2k}`` sum is ``xi/(1 - xi)`` times the main one."""
    return _closed_lower(p, p.xi, _check_r(r))


def _basis(p: CoherentParams, r: np.ndarray, n_max: int, lower: bool) -> np.ndarray:
    """Rows ``n = 0 .. n_max`` of normalized upper (or lower) eigenfunctions on ``r``."""
    k, delta = p.k, p.delta
    x = delta * r * r
    n = np.arange(n_max + 1)
    norms = np.exp(0.5 * (math.log(2.0) + 0.5 * math.log(delta)
                          + gammaln(n + 1) - gammaln(n + 2 * k)))
    main = laguerre_function_table(n_max, 2 * k - 1, x, k - 0.25)
    if not lower:
        return norms[:, None] * main
    _pole_check(p)
    shifted = np.zeros_like(main)
    if n_max >= 1:
        shifted[1:] = laguerre_function_table(n_max - 1, 2 * k, x, k + 0.75)
    rows = -2.0 * shifted + (p.b_lin * r * r + p.b_const) * main
    return norms[:, None] * p.alpha / ((1.0 + p.eps) * r) * rows


def coherent_R1_series(p: CoherentParams, r, n_max: int = 200):
    """Truncated sum ``sum_n c_n R1_n(r)``; independent route to :func:`coherent_R1_closed`."""
    r = _check_r(r)
    return perelomov_expansion(p, n_max) @ _basis(p, r, n_max, lower=False)


def coherent_R2_series(p: CoherentParams, r, n_max: int = 200):
    """Truncated sum ``sum_n c_n R2_n(r)`` with ``L_{-1} = 0``."""
    r = _check_r(r)
    return perelomov_expansion(p, n_max) @ _basis(p, r, n_max, lower=True)


def _literal_upper(p: CoherentParams, r: np.ndarray) -> np.ndarray:
    k, delta, xi = p.k, p.delta, p.xi
    rot = xi * cmath.exp(1j * p.tau / p.hbar)
    if rot == 1:
        raise DomainError("evolved closed form is singular where xi exp(i tau/hbar) = 1")
    pref = analytic_norm(0, k, delta) / delta ** 0.25
    base = (delta * (1.0 - abs(xi) ** 2) / (1.0 - xi) ** 2) ** k
    return (pref * base * r ** (2 * k - 0.5) * cmath.exp(-1j * k)
            * np.exp(0.5 * delta * r * r * (rot + 1.0) / (rot - 1.0)))


def evolved_R1(p: CoherentParams, r, literal: bool = False):
    """Upper component of the coherent state evolved for ``p.tau``.

    By default this is ``exp(-i k tau/hbar)`` times the closed form at the
    rotated label ``xi exp(-i tau/hbar)``. ``literal=True`` instead evaluates
    the printed expression: unrotated prefactor, constant phase ``exp(-i k)``
    and the exponent at ``xi exp(+i tau/hbar)``.
    """
    r = _check_r(r)
    if literal:
        return _literal_upper(p, r)
    return p.phase * _closed_upper(p, p.xi_t, r)


def evolved_R2(p: CoherentParams, r, literal: bool = False):
    """Lower component of the evolved coherent state; see :func:`evolved_R1` for ``literal``.

    The literal bracket is ``-2 delta r + b_lin r**2 + b_const``.
    """
    r = _check_r(r)
    if literal:
        _pole_check(p)
        bracket = -2.0 * p.delta * r + p.b_lin * r * r + p.b_const
        return p.alpha / ((1.0 + p.eps) * r) * _literal_upper(p, r) * bracket
    return p.phase * _closed_lower(p, p.xi_t, r)


def coherent_grid(p: CoherentParams, n_points: int = 2000, xi: complex | None = None) -> np.ndarray:
    """Radii covering the coherent envelope: ``x`` up to ``(80 + 8k) |1 - xi|**2 / (1 - |xi|**2)``."""
    xi = p.xi if xi is None else complex(xi)
    x_hi = (80.0 + 8.0 * p.k) * abs(1.0 - xi) ** 2 / (1.0 - abs(xi) ** 2)
    x_hi = max(x_hi, 20.0)
    r_hi = math.sqrt(x_hi / p.delta)
    return np.linspace(r_hi / n_points, r_hi, n_points)


def sup_relative_deviation(a, b) -> float:
    """``max |a - b| / max |b|``."""
    a, b = np.asarray(a), np.asarray(b)
    scale = np.max(np.abs(b))
    return float(np.max(np.abs(a - b)) / scale) if scale > 0 else float(np.max(np.abs(a)))


@dataclass(frozen=True)
class TruncatedRep:
    """Discrete-series generators on ``|k,0> .. |k,n_max>``.

    ``K+ |n> = sqrt((n+1)(n+2k)) |n+1>``, ``K- = K+^T`` and
    ``K3 = diag(k + n)``. The commutators are exact except in the last row
    and column, where truncation cuts the ladder.
    """

    k: float
    dim: int
    Kplus: np.ndarray = field(repr=False)
    Kminus: np.ndarray = field(repr=False)
    K3: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, k: float, dim: int = 256) -> "TruncatedRep":
        if dim < 2:
            raise ValueError(f"dim must be at least 2, got {dim}")
        n = np.arange(dim - 1)
        kp = np.zeros((dim, dim), dtype=complex)
        kp[n + 1, n] = np.sqrt((n + 1) * (n + 2 * k))
        return cls(k, dim, kp, kp.T.copy(), np.diag(k + np.arange(dim)).astype(complex))

    def casimir(self) -> np.ndarray:
        return -self.Kplus @ self.Kminus + self.K3 @ (self.K3 - np.eye(self.dim))

    def ground(self) -> np.ndarray:
        e0 = np.zeros(self.dim, dtype=complex)
        e0[0] = 1.0
        return e0


def label_for_displacement(theta: complex) -> complex:
    """``zeta = e^{i arg theta} tanh|theta|``."""
    theta = complex(theta)
    mod = abs(theta)
    return 0j if mod == 0 else theta / mod * math.tanh(mod)


def displacement_for_label(zeta: complex) -> complex:
    """Inverse of :func:`label_for_displacement`, ``|zeta| < 1``."""
    zeta = complex(zeta)
    mod = abs(zeta)
    if mod >= 1:
        raise DomainError(f"label needs |zeta| < 1, got {mod}")
    return 0j if mod == 0 else zeta / mod * math.atanh(mod)


@dataclass(frozen=True)
class DisplacementReport:
    theta: complex
    zeta: complex
    eta: float
    exponential: np.ndarray = field(repr=False)
    disentangled: np.ndarray = field(repr=False)
    series: np.ndarray = field(repr=False)
    truncation_change: float = 0.0

    @property
    def exp_vs_series(self) -> float:
        return float(np.max(np.abs(self.exponential - self.series)))

    @property
    def exp_vs_disentangled(self) -> float:
        return float(np.max(np.abs(self.exponential - self.disentangled)))

    @property
    def series_vs_disentangled(self) -> float:
        return float(np.max(np.abs(self.series - self.disentangled)))

    @property
    def worst(self) -> float:
        return max(self.exp_vs_series, self.exp_vs_disentangled, self.series_vs_disentangled)

    def naive_label_mismatch(self, k: float) -> float:
        """Deviation if the series were evaluated at ``theta`` itself (only defined for ``|theta| < 1``)."""
        if abs(self.theta) >= 1:
            return math.inf
        naive = _expansion(k, self.theta, self.exponential.size - 1)
        return float(np.max(np.abs(self.exponential - naive)))


def _displace(rep: TruncatedRep, theta: complex) -> np.ndarray:
    gen = theta * rep.Kplus - np.conj(theta) * rep.Kminus
    return expm(gen) @ rep.ground()


def matrix_displacement_oracle(rep: TruncatedRep, theta: complex,
                               truncation_tol: float = 1e-10,
                               check_truncation: bool = True) -> DisplacementReport:
    """``D(theta)|k,0>`` three ways on the truncated basis.

    1. ``expm(theta K+ - conj(theta) K-) e0`` (scaling and squaring).
    2. The normal-ordered product ``e^{zeta K+} e^{eta K3} e^{-conj(zeta) K-} e0``
       with ``zeta = e^{i arg theta} tanh|theta|`` and ``eta = ln(1 - |zeta|**2)``.
    3. The coherent-state series at label ``zeta``.

    The exponential is repeated at twice the dimension; if its leading
    entries move by more than ``truncation_tol`` the basis is too small. The
    tail depends only on ``|theta|``, so callers scanning phases may check
    once and pass ``check_truncation=False`` afterwards.

    Raises
    ------
    TruncationNotConverged
    """
    theta = complex(theta)
    zeta = label_for_displacement(theta)
    eta = math.log1p(-abs(zeta) ** 2)
    expo = _displace(rep, theta)
    change = 0.0
    if check_truncation:
        bigger = _displace(TruncatedRep.build(rep.k, 2 * rep.dim), theta)[:rep.dim]
        change = float(np.max(np.abs(bigger - expo)))
    if change > truncation_tol:
        raise TruncationNotConverged(
            f"dim={rep.dim} too small for |theta|={abs(theta)}: doubling moved entries by {change:.3e}"
        )
    e3 = np.exp(eta * np.diag(rep.K3).real)
    dis = expm(zeta * rep.Kplus) @ (e3 * (expm(-np.conj(zeta) * rep.Kminus) @ rep.ground()))
    series = _expansion(rep.k, zeta, rep.dim - 1) if zeta != 0 else rep.ground()
    return DisplacementReport(theta, zeta, eta, expo, dis, series, change)


def matrix_evolution_oracle(p: CoherentParams, r, dim: int = 201) -> tuple:
    """Evolved upper and lower profiles from ``exp(-i K3 tau/hbar) D(theta)|k,0>``.

    ``theta`` is chosen so that the displaced state has label ``p.xi``; the
    coefficients are then expanded over the eigenfunctions at ``p.delta``.

    Returns
    -------
    upper, lower : numpy.ndarray
    coefficients : numpy.ndarray
    """
    r = _check_r(r)
    rep = TruncatedRep.build(p.k, dim)
    theta = displacement_for_label(p.xi)
    vec = _displace(rep, theta)
    vec = np.exp(-1j * np.diag(rep.K3).real * p.tau / p.hbar) * vec
    upper = vec @ _basis(p, r, dim - 1, lower=False)
    lower = vec @ _basis(p, r, dim - 1, lower=True)
    return upper, lower, vec

"""Bound-state spectrum of the modified Dirac oscillator in both symmetry limits.

The radial problem reduces to an su(1,1) eigenvalue condition

    spin:        k + n = beta/(4 delta) + (eps**2 - 1)/(4 delta alpha**2)
    pseudospin:  k + n = (eps**2 - 1)/(4 delta alpha**2) - beta/(4 delta)

with an energy-dependent width ``delta(eps)``. Squaring once gives a depressed
quartic in ``eps``; its four roots are then screened against the unsquared
relation above, which discards the sign artifacts introduced by squaring.
"""

from __future__ import annotations

import enum
import logging
import math
import warnings
from dataclasses import dataclass, field

from .errors import NegativeRadicand, NoPhysicalRoot
from .quartic import QuarticCoefficients, RootSet, solve_quartic

log = logging.getLogger(__name__)

#: Unsquared-relation residual below which a real root counts as physical.
PHYSICAL_TOL = 1e-8


class SymmetryLimit(str, enum.Enum):
    SPIN = "spin"
    PSEUDOSPIN = "pseudospin"

    @classmethod
    def parse(cls, value) -> "SymmetryLimit":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class ModelParams:
    """Inputs for one bound-state problem.

    ``lam`` is the spin-orbit number lambda and ``l`` the orbital number (read
    as l-bar in the pseudospin limit). The usual pairings lambda(lambda+1) =
    l(l+1) and lambda(lambda-1) = lbar(lbar+1) are not enforced, so both may be
    varied independently.
    """

    alpha: float
    mu: float = 0.0
    w: float = 0.0
    A: float = 0.0
    lam: float = 0.0
    l: float = 0.0
    n: int = 0

    def __post_init__(self):
        for name in ("alpha", "mu", "w", "A", "lam", "l"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name}={value!r} is not finite")
            object.__setattr__(self, name, value)
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.l < 0:
            raise ValueError(f"l must be non-negative, got {self.l}")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def with_n(self, n: int) -> "ModelParams":
        return ModelParams(self.alpha, self.mu, self.w, self.A, self.lam, self.l, n)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "mu": self.mu, "w": self.w, "A": self.A,
                "lambda": self.lam, "l": self.l, "n": self.n}


@dataclass(frozen=True)
class DerivedQuantities:
    """Frequencies and Bargmann index derived from :class:`ModelParams`.

    ``frequency`` is the constant part of the oscillator width, so that
    ``delta(eps)**2 = frequency**2 + 2 mu (1 + eps)``. In the spin limit it is
    the partial oscillation frequency ``beta1 = w + alpha**2 lambda mu``; in the
    pseudospin limit it is ``w - alpha**2 lambda mu``.
    """

    limit: SymmetryLimit
    frequency: float
    beta: float
    k: float
    mu: float

    @property
    def beta1(self):
        return self.frequency if self.limit is SymmetryLimit.SPIN else None

    @property
    def degenerate(self) -> bool:
        """True when ``delta`` vanishes identically (no oscillator at all)."""
        return self.mu == 0.0 and self.frequency == 0.0

    def delta_squared(self, eps: float) -> float:
        return self.frequency ** 2 + 2.0 * self.mu * (1.0 + eps)

    def delta_of(self, eps: float) -> float:
        """Total oscillation frequency at ``eps``; ``nan`` if it is not real."""
        d2 = self.delta_squared(eps)
        return math.sqrt(d2) if d2 >= 0.0 else math.nan


def _radicand(params: ModelParams, limit: SymmetryLimit, variant: str) -> float:
    A, lam, l = params.A, params.lam, params.l
    if limit is SymmetryLimit.SPIN or variant == "printed":
        return 1 + 4 * A * A + 8 * A * lam + 4 * A + 4 * l + 4 * l * l
    # Matches the 1/x coefficient lbar(lbar+1) + A(2 lambda + A - 1) of the
    # pseudospin radial operator, so that the Casimir returns k(k-1).
    return 1 + 4 * A * A + 8 * A * lam - 4 * A + 4 * l + 4 * l * l


def bargmann_index(params: ModelParams, limit=SymmetryLimit.SPIN, branch: int = 1,
                   variant: str = "operator") -> float:
    """Bargmann index ``k = 1/2 + branch * sqrt(radicand) / 4``.

    Spin radicand: ``1 + 4A**2 + 8 A lambda + 4A + 4l + 4l**2``. In the
    pseudospin limit the ``+4A`` becomes ``-4A`` (``variant="operator"``), which
    is what the pseudospin radial operator requires; ``variant="printed"``
    keeps ``+4A`` for comparison. ``branch=-1`` gives the lower root, which is
    only useful for diagnostics: physical states need ``k > 1/2``.

    Raises
    ------
    NegativeRadicand
    """
    limit = SymmetryLimit.parse(limit)
    if variant not in ("operator", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    rad = _radicand(params, limit, variant)
    if rad < 0:
        raise NegativeRadicand(f"Bargmann radicand {rad} < 0 for {params}")
    return 0.5 + branch * math.sqrt(rad) / 4.0


def inverse_square_coefficient(params: ModelParams, limit=SymmetryLimit.SPIN) -> float:
    """Coefficient of ``1/x`` in the su(1,1) operator ``B3`` (or ``E3``).

    ``(l(l+1) + A(2 lambda + A + 1))/4 - 3/16`` in the spin limit and
    ``(lbar(lbar+1) + A(2 lambda + A - 1))/4 - 3/16`` in the pseudospin limit.
    """
    limit = SymmetryLimit.parse(limit)
    A, lam, l = params.A, params.lam, params.l
    shift = 1.0 if limit is SymmetryLimit.SPIN else -1.0
    return (l * (l + 1) + A * (2 * lam + A + shift)) / 4.0 - 3.0 / 16.0


def derived_spin(params: ModelParams) -> DerivedQuantities:
    beta1 = params.w + params.alpha ** 2 * params.lam * params.mu
    beta = beta1 * (1.0 - 2.0 * params.lam - 2.0 * params.A)
    return DerivedQuantities(SymmetryLimit.SPIN, beta1, beta,
                             bargmann_index(params, SymmetryLimit.SPIN), params.mu)


def derived_pseudospin(params: ModelParams) -> DerivedQuantities:
    a2 = params.alpha ** 2
    w, lam, mu, A = params.w, params.lam, params.mu, params.A
    freq = w - a2 * lam * mu
    beta = w + 2 * lam * w + 2 * w * A - lam * a2 * mu - 2 * lam ** 2 * a2 * mu - 2 * lam * a2 * mu * A
    return DerivedQuantities(SymmetryLimit.PSEUDOSPIN, freq, beta,
                             bargmann_index(params, SymmetryLimit.PSEUDOSPIN), mu)


def derived(params: ModelParams, limit=SymmetryLimit.SPIN) -> DerivedQuantities:
    limit = SymmetryLimit.parse(limit)
    return derived_spin(params) if limit is SymmetryLimit.SPIN else derived_pseudospin(params)


def _abc(params: ModelParams, limit: SymmetryLimit, c_variant: str) -> tuple:
    dq = derived(params, limit)
    a2 = params.alpha ** 2
    sign = 1.0 if limit is SymmetryLimit.SPIN else -1.0
    a = -1.0 + sign * dq.beta * a2
    b = 4.0 * a2 * (dq.k + params.n)
    if c_variant == "rederived":
        c = 2.0 * params.mu + dq.frequency ** 2
    elif c_variant == "printed":
        c = sign * 2.0 * params.mu + dq.frequency ** 2
    else:
        raise ValueError(f"unknown c_variant {c_variant!r}")
    return a, b, c


def quartic_coefficients(params: ModelParams, limit=SymmetryLimit.SPIN,
                         c_variant: str = "rederived") -> QuarticCoefficients:
    """Quartic ``(p, q, r)`` obtained by squaring the eigenvalue relation.

    With ``a = -1 +- beta alpha**2`` (``+`` spin, ``-`` pseudospin),
    ``b = 4 alpha**2 (k + n)`` and ``delta**2 = 2 mu eps + c``, the relation
    ``b delta = eps**2 + a`` squares to ``p = 2a, q = -2 mu b**2,
    r = a**2 - b**2 c`` where ``c = 2 mu + frequency**2``.

    ``c_variant="printed"`` uses ``c = -2 mu + (w - alpha**2 lambda mu)**2`` in the
    pseudospin limit, as it appears in print; in the spin limit both variants
    coincide.
    """
    limit = SymmetryLimit.parse(limit)
    a, b, c = _abc(params, limit, c_variant)
    return QuarticCoefficients(2.0 * a, -2.0 * params.mu * b * b, a * a - b * b * c)


def _polish_root(params: ModelParams, dq: DerivedQuantities, eps: float,
                 steps: int = 4) -> float:
    """Newton steps on ``g(eps) = eps**2 + a - b delta(eps)``, the relation before squaring.

    Near-double quartic roots are only accurate to ``sqrt`` of the
    coefficient rounding, and the residual amplifies that by
    ``1/(4 delta alpha**2)``; ``g`` itself has slope close to ``2 eps``. Only
    steps that reduce ``|g|`` are taken and roots of the squared-away
    branch (``g`` far from zero) are left untouched.
    """
    a, b, _ = _abc(params, dq.limit, "rederived")

    def g(e):
        d2 = dq.delta_squared(e)
        return math.inf if d2 <= 0 else e * e + a - b * math.sqrt(d2)

    ge = g(eps)
    scale = max(1.0, eps * eps, abs(a))
    if not abs(ge) < 1e-6 * scale:
        return eps
    for _ in range(steps):
        d2 = dq.delta_squared(eps)
        slope = 2.0 * eps - b * dq.mu / math.sqrt(d2)
        if slope == 0.0 or ge == 0.0:
            break
        trial = eps - ge / slope
        gt = g(trial)
        if not abs(gt) < abs(ge):
            break
        eps, ge = trial, gt
    return eps


def _score(params: ModelParams, dq: DerivedQuantities, z: complex, tol: float) -> tuple:
    """(residual, reason) of one root; ``reason`` is None for accepted roots."""
    if z.imag != 0.0:
        return math.inf, "complex root"
    eps = z.real
    a2 = params.alpha ** 2
    n = params.n
    if dq.degenerate:
        # delta == 0: compare the multiplied-through relation eps**2 + a == b delta == 0.
        sign = 1.0 if dq.limit is SymmetryLimit.SPIN else -1.0
        res = eps * eps - 1.0 + sign * dq.beta * a2
        return res, (None if abs(res) < tol else "fails eigenvalue relation (delta == 0)")
    d2 = dq.delta_squared(eps)
    if d2 < 0.0:
        return math.inf, "complex delta"
    if d2 == 0.0:
        return math.inf, "delta == 0"
    res = _residual_value(params, dq, eps, math.sqrt(d2))
    if abs(res) < tol:
        return res, None
    return res, "fails unsquared relation"


def _residual_value(params: ModelParams, dq: DerivedQuantities, eps: float, delta: float) -> float:
    a2 = params.alpha ** 2
    kinetic = (eps * eps - 1.0) / (4.0 * delta * a2)
    shift = dq.beta / (4.0 * delta)
    rhs = shift + kinetic if dq.limit is SymmetryLimit.SPIN else kinetic - shift
    return (dq.k + params.n) - rhs


def residual(params: ModelParams, limit, eps: float) -> float:
    """LHS minus RHS of the unsquared eigenvalue relation at ``eps``.

    Returns ``+inf`` when ``delta(eps)`` is not real and positive.
    """
    dq = derived(params, limit)
    d2 = dq.delta_squared(eps)
    if not d2 > 0.0:
        return math.inf
    return _residual_value(params, dq, eps, math.sqrt(d2))


@dataclass(frozen=True)
class SpectrumSolution:
    params: ModelParams
    limit: SymmetryLimit
    coefficients: QuarticCoefficients
    roots: RootSet
    residuals: tuple
    physical: tuple
    branch_labels: tuple
    reasons: tuple
    method: str = "ferrari"
    c_variant: str = "rederived"
    degenerate: bool = False
    derived: DerivedQuantities = field(default=None, repr=False)

    @property
    def accepted(self) -> tuple:
        """Accepted energies, in root order."""
        return tuple(self.roots[i].real for i in self.physical)

    @property
    def positive_root(self):
        """Largest accepted particle energy, or None."""
        pos = [e for e in self.accepted if e > 0]
        return max(pos) if pos else None

    def delta(self, index: int) -> float:
        return self.derived.delta_of(self.roots[index].real)


def solve_spectrum(params: ModelParams, limit=SymmetryLimit.SPIN, tol: float = PHYSICAL_TOL,
                   c_variant: str = "rederived", raise_on_empty: bool = True) -> SpectrumSolution:
    """Solve the quartic and keep the roots that satisfy the unsquared relation.

    Real roots are first Newton-polished on the unsquared relation (see
    :func:`_polish_root`), so ``roots`` may differ from the raw quartic roots
    in the last few digits. A root is physical when it is real,
    ``delta(eps)`` is real and positive and the residual is below ``tol``. The degenerate case ``mu == frequency == 0``
    (``delta`` identically zero) is screened with the multiplied-through
    relation instead and flagged via ``degenerate``.

    Raises
    ------
    NoPhysicalRoot
        When all four roots are rejected (unless ``raise_on_empty=False``). The
        partially filled solution is attached as ``exc.solution``.
    """
    limit = SymmetryLimit.parse(limit)
    dq = derived(params, limit)
    coeffs = quartic_coefficients(params, limit, c_variant)
    roots, method = solve_quartic(coeffs)

    if not dq.degenerate and c_variant == "rederived":
        roots = RootSet(tuple(complex(_polish_root(params, dq, z.real)) if z.imag == 0.0 else z
                              for z in roots))

    residuals, reasons, physical, labels = [], [], [], []
    for i, z in enumerate(roots):
        res, reason = _score(params, dq, z, tol)
        residuals.append(res)
        reasons.append(reason)
        if reason is None:
            physical.append(i)
            labels.append("particle" if z.real > 0 else "antiparticle")

    sol = SpectrumSolution(params, limit, coeffs, roots, tuple(residuals), tuple(physical),
                           tuple(labels), tuple(reasons), method, c_variant, dq.degenerate, dq)
    if dq.degenerate:
        log.debug("delta vanishes identically for %s; free-particle screening used", params)
    if not physical and raise_on_empty:
        raise NoPhysicalRoot(
            f"no physical root for {params} ({limit.value}); residuals={residuals}", sol
        )
    return sol


def pseudospin_c_diagnostic(params: ModelParams, tol: float = PHYSICAL_TOL) -> dict:
    """Which pseudospin ``c`` (printed ``-2 mu`` or re-derived ``+2 mu``) yields physical roots.

    Returns a mapping ``variant -> {"coefficients", "accepted", "passes"}``.
    """
    report = {}
    for variant in ("printed", "rederived"):
        sol = solve_spectrum(params, SymmetryLimit.PSEUDOSPIN, tol, variant, raise_on_empty=False)
        report[variant] = {
            "coefficients": (sol.coefficients.p, sol.coefficients.q, sol.coefficients.r),
            "accepted": sol.accepted,
            "passes": bool(sol.physical),
        }
    return report


def flat_spectrum(params: ModelParams) -> float:
    """Closed-form flat-spacetime energy ``sqrt(1 + 2 w alpha**2 (2n + lambda + l + 1))``.

    Only meaningful for ``mu = A = 0``; other inputs trigger a warning.
    """
    if params.mu != 0 or params.A != 0:
        warnings.warn("flat_spectrum assumes mu = 0 and A = 0", stacklevel=2)
    rad = 1.0 + 2.0 * params.w * params.alpha ** 2 * (2 * params.n + params.lam + params.l + 1)
    if rad < 0:
        raise NegativeRadicand(f"flat-spectrum radicand {rad} < 0 for {params}")
    return math.sqrt(rad)

"""Finite-difference realisation of the su(1,1) generators on a uniform x-grid.

In the variable ``x = delta r**2`` the radial equation becomes an eigenvalue
problem for

    B3 = -x d2/dx2 + g/x + x/4,      T+- = -+ x d/dx + x/2 - B3,

with ``g`` the inverse-square coefficient. They satisfy ``[B3, T+-] = +-T+-``,
``[T-, T+] = 2 B3`` and the Casimir ``-T+ T- + B3 (B3 - 1)`` equals ``g``
identically, which is ``k(k-1)`` for the Bargmann index ``k``. The
pseudospin generators E3 and P+- have the same form with their own ``g``, so
one code path serves both limits.

All derivatives are second-order central differences with second-order
one-sided stencils at the two end points. Defect norms are plain discrete L2
norms over the grid with ``trim`` points dropped at each end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .special import laguerre
from .spectrum import (ModelParams, SymmetryLimit, bargmann_index,
                       inverse_square_coefficient)

DEFAULT_POINTS = 2048
DEFAULT_TRIM = 4


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_i = i h``, ``i = 1..N``, so ``x_1 = h`` and ``x_N = x_max``."""

    points: np.ndarray
    h: float
    x_max: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 64:
            raise ValueError(f"grid needs at least 64 points, got {pts.size}")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        if pts[0] < self.h * (1 - 1e-12):
            raise ValueError("first grid point must satisfy x_1 >= h")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, n_points: int = DEFAULT_POINTS, x_max: float = 40.0) -> "Grid":
        h = x_max / n_points
        return cls(h * np.arange(1, n_points + 1), h, float(x_max))

    @classmethod
    def for_level(cls, n: int, n_points: int = DEFAULT_POINTS) -> "Grid":
        """Default grid for eigenfunctions up to level ``n``: ``x_max = 40 + 8n``."""
        return cls.uniform(n_points, 40.0 + 8.0 * n)

    @property
    def size(self) -> int:
        return self.points.size

    def refined(self) -> "Grid":
        """Same ``x_max`` with ``h`` halved."""
        return Grid.uniform(2 * self.size, self.x_max)


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.grid.points.shape:
            raise ValueError("values do not match the grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid function has non-finite samples")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, grid: Grid, func) -> "GridFunction":
        return cls(grid, func(grid.points))

    def _new(self, values) -> "GridFunction":
        return GridFunction(self.grid, values)

    def __add__(self, other):
        return self._new(self.values + other.values)

    def __sub__(self, other):
        return self._new(self.values - other.values)

    def __mul__(self, scalar):
        return self._new(self.values * scalar)

    __rmul__ = __mul__

    def norm(self, trim: int = DEFAULT_TRIM) -> float:
        v = self.values[trim:self.values.size - trim]
        return float(np.sqrt(self.grid.h * np.sum(np.abs(v) ** 2)))


@dataclass(frozen=True)
class OperatorContext:
    """Bargmann index and ``1/x`` coefficient of the generators.

    ``ell_term`` must equal ``k(k-1)``; otherwise the Casimir cannot be
    ``k(k-1)`` and the construction is rejected.
    """

    k: float
    ell_term: float
    limit: SymmetryLimit = SymmetryLimit.SPIN

    def __post_init__(self):
        object.__setattr__(self, "limit", SymmetryLimit.parse(self.limit))
        casimir = self.k * (self.k - 1.0)
        if abs(self.ell_term - casimir) > 1e-12 * max(1.0, abs(casimir)):
            raise ValueError(
                f"1/x coefficient {self.ell_term} inconsistent with k(k-1) = {casimir}"
            )

    @classmethod
    def from_params(cls, params: ModelParams, limit=SymmetryLimit.SPIN) -> "OperatorContext":
        limit = SymmetryLimit.parse(limit)
        return cls(bargmann_index(params, limit), inverse_square_coefficient(params, limit), limit)

    @classmethod
    def from_k(cls, k: float, limit=SymmetryLimit.SPIN) -> "OperatorContext":
        return cls(k, k * (k - 1.0), limit)


def _d1(v: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - v[:-2]) / (2 * h)
    out[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h)
    out[-1] = (3 * v[-1] - 4 * v[-2] + v[-3]) / (2 * h)
    return out


def _d2(v: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - 2 * v[1:-1] + v[:-2]) / h ** 2
    out[0] = (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / h ** 2
    out[-1] = (2 * v[-1] - 5 * v[-2] + 4 * v[-3] - v[-4]) / h ** 2
    return out


def apply_B3(ctx: OperatorContext, f: GridFunction) -> GridFunction:
    x, h, v = f.grid.points, f.grid.h, f.values
    return f._new(-x * _d2(v, h) + (ctx.ell_term / x + 0.25 * x) * v)


def _ladder(ctx: OperatorContext, f: GridFunction, sign: int) -> GridFunction:
    x, h, v = f.grid.points, f.grid.h, f.values
    return f._new(-sign * x * _d1(v, h) + 0.5 * x * v - apply_B3(ctx, f).values)


def apply_Tplus(ctx: OperatorContext, f: GridFunction) -> GridFunction:
    """Raising operator ``-x d/dx + x/2 - B3``."""
    return _ladder(ctx, f, +1)


def apply_Tminus(ctx: OperatorContext, f: GridFunction) -> GridFunction:
    """Lowering operator ``x d/dx + x/2 - B3``."""
    return _ladder(ctx, f, -1)


# The pseudospin generators share the implementation.
apply_E3, apply_Pplus, apply_Pminus = apply_B3, apply_Tplus, apply_Tminus


def _ratio(num: GridFunction, den: GridFunction, trim: int) -> float:
    d = den.norm(trim)
    return num.norm(trim) / d if d > 0 else 0.0


def commutator_defect(ctx: OperatorContext, f: GridFunction, trim: int = DEFAULT_TRIM) -> tuple:
    """Relative L2 defects of ``[B3, T+] = T+`` and ``[T-, T+] = 2 B3`` on ``f``.

    Returns
    -------
    raising : float
        ``|([B3,T+] - T+) f| / |T+ f|``
    closure : float
        ``|([T-,T+] - 2 B3) f| / |2 B3 f|``
    """
    B = lambda g: apply_B3(ctx, g)
    Tp = lambda g: apply_Tplus(ctx, g)
    Tm = lambda g: apply_Tminus(ctx, g)
    tpf, bf = Tp(f), B(f)
    raising = B(tpf) - Tp(bf) - tpf
    closure = Tm(tpf) - Tp(Tm(f)) - 2 * bf
    return _ratio(raising, tpf, trim), _ratio(closure, 2 * bf, trim)


def lowering_commutator_defect(ctx: OperatorContext, f: GridFunction,
                               trim: int = DEFAULT_TRIM) -> float:
    """``|([B3,T-] + T-) f| / |T- f|``."""
    tmf = apply_Tminus(ctx, f)
    d = apply_B3(ctx, tmf) - apply_Tminus(ctx, apply_B3(ctx, f)) + tmf
    return _ratio(d, tmf, trim)


def casimir_defect(ctx: OperatorContext, f: GridFunction, n: int | None = None,
                   trim: int = DEFAULT_TRIM) -> float:
    """Relative L2 norm of ``(-T+ T- + B3(B3 - 1) - k(k-1)) f``.

    The denominator is the largest of the norms of ``T+ T- f``,
    ``B3(B3 - 1) f`` and ``k(k-1) f``, which stays non-zero even when
    ``k(k-1)`` or ``k + n - 1`` vanishes. ``n`` is informational only: the
    Casimir is a scalar operator, so any smooth ``f`` is a valid probe.
    """
    bf = apply_B3(ctx, f)
    tptm = apply_Tplus(ctx, apply_Tminus(ctx, f))
    bb = apply_B3(ctx, bf) - bf
    cas = ctx.k * (ctx.k - 1.0)
    defect = bb - tptm - cas * f
    scale = max(tptm.norm(trim), bb.norm(trim), abs(cas) * f.norm(trim))
    return defect.norm(trim) / scale if scale > 0 else 0.0


def expectation_B3(ctx: OperatorContext, f: GridFunction) -> float:
    """``<f, B3 f> / <f, f>`` with trapezoidal weights in plain ``dx``."""
    w = np.full(f.grid.size, f.grid.h)
    w[0] = w[-1] = 0.5 * f.grid.h
    bf = apply_B3(ctx, f).values
    num = np.sum(w * np.conj(f.values) * bf)
    den = np.sum(w * np.abs(f.values) ** 2)
    return float(num.real / den)


def ladder_coefficient(f_from: GridFunction, f_to: GridFunction, image: GridFunction,
                       trim: int = DEFAULT_TRIM) -> tuple:
    """Least-squares ``c`` in ``image ~ c f_to`` and the relative misfit."""
    s = slice(trim, f_to.grid.size - trim)
    target, img = f_to.values[s], image.values[s]
    c = np.vdot(target, img) / np.vdot(target, target)
    misfit = np.linalg.norm(img - c * target) / np.linalg.norm(img)
    return complex(c), float(misfit)


def eigenfunction(ctx: OperatorContext, grid: Grid, n: int, normalized: bool = True) -> GridFunction:
    """Analytic ``Phi_n = x**k exp(-x/2) L_n^{2k-1}(x)``, eigenvalue ``k + n`` of ``B3``.

    With ``normalized=True`` the function has unit norm in ``L2(dx/x)``, the
    measure in which the generators are (formally) self-adjoint, so that
    ``T+ Phi_n = -sqrt((n+1)(n+2k)) Phi_{n+1}``.
    """
    x, k = grid.points, ctx.k
    vals = x ** k * np.exp(-0.5 * x) * laguerre(n, 2 * k - 1, x)
    if normalized:
        vals = vals * np.exp(0.5 * (gammaln(n + 1) - gammaln(n + 2 * k)))
    return GridFunction(grid, vals)

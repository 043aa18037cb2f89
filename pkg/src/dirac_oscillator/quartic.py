"""Depressed quartic solver: Ferrari's method plus an independent eigenvalue oracle.

All routines work on the monic depressed quartic

    eps**4 + p*eps**2 + q*eps + r = 0

Roots are always returned as a :class:`RootSet` of four complex numbers in a
canonical order (descending real part, ties broken by descending imaginary
part), so different solvers can be compared entry by entry.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DegenerateResolvent, NoConvergence

#: Resolvent roots at or below this value make Ferrari's q/sqrt(2*pi) term unusable.
RESOLVENT_FLOOR = 1e-14

_NEWTON_STEPS = 5
_ORACLE_MAX_ITER = 500
_ORACLE_RESIDUAL = 1e-10


@dataclass(frozen=True)
class QuarticCoefficients:
    """Coefficients ``(p, q, r)`` of ``eps**4 + p eps**2 + q eps + r``."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        for name in ("p", "q", "r"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"quartic coefficient {name}={value!r} is not finite")
            object.__setattr__(self, name, value)

    def __call__(self, z):
        z2 = z * z
        return (z2 + self.p) * z2 + self.q * z + self.r

    def derivative(self, z):
        return (4.0 * z * z + 2.0 * self.p) * z + self.q

    def scaled_residual(self, z) -> float:
        """``|f(z)| / max(1, |z|**4)``, the quantity every root tolerance refers to."""
        return abs(self(z)) / max(1.0, abs(z) ** 4)


@dataclass(frozen=True)
class RootSet:
    """Exactly four roots in canonical order."""

    roots: tuple

    def __post_init__(self):
        roots = tuple(complex(z) for z in self.roots)
        if len(roots) != 4:
            raise ValueError(f"a quartic has 4 roots, got {len(roots)}")
        object.__setattr__(self, "roots", roots)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.roots)

    def __len__(self) -> int:
        return 4

    def __getitem__(self, i) -> complex:
        return self.roots[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.roots, dtype=complex)

    def conjugate(self) -> "RootSet":
        return RootSet(tuple(z.conjugate() for z in self.roots))


def canonical_roots(roots: Sequence[complex], snap: float = 1e-12) -> RootSet:
    """Flush rounding-level components to zero and sort canonically.

    A real or imaginary part below ``snap * max(1, |z|)`` is set to zero, so a
    root with a negligible imaginary part is treated as real. Non-real roots of a real quartic pair up as exact conjugates; the
    pair is symmetrised so that ordering never depends on rounding noise.
    """
    cleaned = []
    for z in roots:
        z = complex(z)
        scale = snap * max(1.0, abs(z))
        re = 0.0 if abs(z.real) <= scale else z.real
        im = 0.0 if abs(z.imag) <= scale else z.imag
        cleaned.append(complex(re, im))

    upper = [z for z in cleaned if z.imag > 0]
    lower = [z for z in cleaned if z.imag < 0]
    real = [z for z in cleaned if z.imag == 0]
    out = list(real)
    if len(upper) == len(lower):
        remaining = list(lower)
        for z in upper:
            j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z.conjugate()))
            w = remaining.pop(j)
            re = 0.5 * (z.real + w.real)
            im = 0.5 * (z.imag - w.imag)
            out.extend([complex(re, im), complex(re, -im)])
    else:
        out.extend(upper + lower)
    out.sort(key=lambda z: (-z.real, -z.imag))
    return RootSet(tuple(out))


def _polish(c: QuarticCoefficients, z: complex, steps: int) -> complex:
    # Newton steps are only kept while they reduce |f|; near a multiple root
    # the iteration stalls instead of wandering off.
    fz = abs(c(z))
    for _ in range(steps):
        if fz == 0.0:
            break
        d = c.derivative(z)
        if d == 0:
            break
        trial = z - c(z) / d
        ft = abs(c(trial))
        if not ft < fz:
            break
        z, fz = trial, ft
    return z


def _solve_monic_quadratic(b: float, c: float) -> tuple:
    """Roots of ``z**2 + b z + c`` without cancellation in the real case."""
    disc = b * b - 4.0 * c
    if disc >= 0.0:
        sq = math.sqrt(disc)
        t = -0.5 * (b + math.copysign(sq, b))
        if t == 0.0:
            return 0.0j, 0.0j
        return complex(t), complex(c / t)
    im = 0.5 * math.sqrt(-disc)
    return complex(-0.5 * b, im), complex(-0.5 * b, -im)


def _resolvent(c: QuarticCoefficients, m: float) -> float:
    return ((m + c.p) * m + (0.25 * c.p * c.p - c.r)) * m - 0.125 * c.q * c.q


def resolvent_residual(c: QuarticCoefficients, m: float) -> float:
    """Value of the resolvent cubic ``m**3 + p m**2 + (p**2/4 - r) m - q**2/8`` at ``m``."""
    return _resolvent(c, m)


def resolvent_cubic_root(c: QuarticCoefficients) -> float:
    """Largest real root of Ferrari's resolvent cubic.

    The cubic is reduced to ``y**3 + p1 y + q1 = 0`` with
    ``q1 = r p/3 - q**2/8 - p**3/108`` and ``p1 = -r - p**2/12``; the root is
    ``y - p/3``. When ``q1**2/4 + p1**3/27 < 0`` all three roots are real and
    Cardano's radicals go complex, so the trigonometric form is used instead.

    The largest root is never negative because the cubic equals ``-q**2/8 <= 0``
    at zero and grows without bound; it is clamped at zero against rounding.

    Parameters
    ----------
    c : QuarticCoefficients

    Returns
    -------
    float
        The resolvent root (called ``resolvent_pi`` elsewhere; not the circle
        constant).
    """
    p, q, r = c.p, c.q, c.r
    q1 = r * p / 3.0 - q * q / 8.0 - p ** 3 / 108.0
    p1 = -r - p * p / 12.0
    disc = 0.25 * q1 * q1 + p1 ** 3 / 27.0

    if disc < 0.0:
        rho = 2.0 * math.sqrt(-p1 / 3.0)
        arg = 3.0 * q1 / (p1 * rho)
        theta = math.acos(min(1.0, max(-1.0, arg)))
        candidates = [rho * math.cos(theta / 3.0)]
    else:
        sq = math.sqrt(disc)
        u = float(np.cbrt(-0.5 * q1 + sq))
        v = float(np.cbrt(-0.5 * q1 - sq))
        candidates = [u + v]
        # A (numerically) double root hides in the "complex" pair.
        if 0.5 * math.sqrt(3.0) * abs(u - v) <= 1e-6 * max(1.0, abs(u) + abs(v)):
            candidates.append(-0.5 * (u + v))
    m = max(candidates) - p / 3.0

    fm = abs(_resolvent(c, m))
    for _ in range(4):
        d = (3.0 * m + 2.0 * p) * m + 0.25 * p * p - r
        if fm == 0.0 or d == 0.0:
            break
        trial = m - _resolvent(c, m) / d
        ft = abs(_resolvent(c, trial))
        if not ft < fm:
            break
        m, fm = trial, ft
    return max(m, 0.0)


def ferrari_roots(c: QuarticCoefficients, resolvent_pi: float | None = None) -> RootSet:
    """All four roots by Ferrari's method, Newton-polished.

    With ``u = sqrt(2 pi)`` the quartic splits into

        eps**2 - u eps + p/2 + pi + s = 0
        eps**2 + u eps + p/2 + pi - s = 0

    where ``s = q / (2u)``. This reproduces the textbook closed form
    ``(+-sqrt(2) pi +- sqrt(-2 pi**2 -+ sqrt(2 pi) q - 2 p pi)) / (2 sqrt(pi))``.
    For ``q == 0`` and a vanishing resolvent root the split constant is
    ``s = sqrt(pi**2 + p pi + p**2/4 - r)`` instead.

    Raises
    ------
    DegenerateResolvent
        If the resolvent root is ``<= 1e-14`` while ``q != 0``.
    """
    m = resolvent_cubic_root(c) if resolvent_pi is None else float(resolvent_pi)
    if m <= RESOLVENT_FLOOR:
        if c.q != 0.0:
            raise DegenerateResolvent(
                f"resolvent root {m!r} too small for q={c.q!r} (p={c.p!r}, r={c.r!r})"
            )
        u = 0.0
        s = math.sqrt(max(m * m + c.p * m + 0.25 * c.p * c.p - c.r, 0.0))
    else:
        u = math.sqrt(2.0 * m)
        s = c.q / (2.0 * u)
    half = 0.5 * c.p + m
    raw = _solve_monic_quadratic(-u, half + s) + _solve_monic_quadratic(u, half - s)
    return canonical_roots([_polish(c, z, _NEWTON_STEPS) for z in raw])


def _durand_kerner(c: QuarticCoefficients, start: np.ndarray) -> np.ndarray:
    z = start.astype(complex).copy()
    for _ in range(_ORACLE_MAX_ITER):
        if all(c.scaled_residual(w) < _ORACLE_RESIDUAL for w in z):
            return z
        for i in range(4):
            denom = np.prod([z[i] - z[j] for j in range(4) if j != i])
            if denom != 0:
                z[i] = z[i] - c(z[i]) / denom
    raise NoConvergence(
        f"Durand-Kerner did not converge in {_ORACLE_MAX_ITER} iterations "
        f"for p={c.p!r}, q={c.q!r}, r={c.r!r}"
    )


def oracle_roots(c: QuarticCoefficients) -> RootSet:
    """Independent roots from companion-matrix eigenvalues.

    Eigenvalues are Newton-polished; should any root still miss the residual
    target ``1e-10 * max(1, |eps|**4)``, all four are refined jointly by
    Durand-Kerner iteration.
    """
    companion = np.zeros((4, 4))
    companion[0, :] = [0.0, -c.p, -c.q, -c.r]
    companion[1:, :3] = np.eye(3)
    z = np.linalg.eigvals(companion)
    z = np.array([_polish(c, complex(w), 20) for w in z])
    if not all(c.scaled_residual(w) < _ORACLE_RESIDUAL for w in z):
        # Perturb the start so no two iterates coincide.
        z = _durand_kerner(c, z + 1e-3 * (0.4 + 0.9j) ** np.arange(4))
    return canonical_roots(z)


def biquadratic_roots(p: float, r: float) -> RootSet:
    """Roots of ``eps**4 + p eps**2 + r`` as ``+-sqrt(-a +- sqrt(a**2 - r))``, ``a = p/2``."""
    a = 0.5 * p
    s = cmath.sqrt(a * a - r)
    w1 = cmath.sqrt(-a + s)
    w2 = cmath.sqrt(-a - s)
    return canonical_roots([w1, -w1, w2, -w2])


def solve_quartic(c: QuarticCoefficients) -> tuple:
    """Ferrari roots, falling back to the oracle on a degenerate resolvent.

    Returns
    -------
    roots : RootSet
    method : str
        ``"ferrari"`` or ``"oracle"``.
    """
    try:
        return ferrari_roots(c), "ferrari"
    except DegenerateResolvent:
        return oracle_roots(c), "oracle"


def vieta_defects(roots: RootSet, c: QuarticCoefficients) -> tuple:
    """Scaled defects of the four elementary symmetric functions.

    For the monic depressed quartic the expected values are
    ``e1 = 0, e2 = p, e3 = -q, e4 = r``; each defect is divided by
    ``max(1, |expected|)``.
    """
    z = roots.as_array()
    e1 = z.sum()
    e2 = sum(z[i] * z[j] for i, j in itertools.combinations(range(4), 2))
    e3 = sum(z[i] * z[j] * z[k] for i, j, k in itertools.combinations(range(4), 3))
    e4 = np.prod(z)
    expected = (0.0, c.p, -c.q, c.r)
    return tuple(
        float(abs(got - want) / max(1.0, abs(want)))
        for got, want in zip((e1, e2, e3, e4), expected)
    )


def match_distance(a: RootSet, b: RootSet) -> float:
    """Largest per-root distance under the best one-to-one matching of ``a`` to ``b``."""
    za, zb = a.as_array(), b.as_array()
    return float(
        min(max(abs(za[i] - zb[j]) for i, j in enumerate(perm))
            for perm in itertools.permutations(range(4)))
    )

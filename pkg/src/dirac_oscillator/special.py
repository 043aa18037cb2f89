"""Generalized Laguerre polynomials and their generating function."""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_RESCALE = 1e150


def laguerre(n: int, a: float, x):
    """Generalized Laguerre polynomial ``L_n^a(x)`` by forward recurrence.

    Uses ``k L_k = (2k - 1 + a - x) L_{k-1} - (k - 1 + a) L_{k-2}`` seeded
    with ``L_0 = 1`` and ``L_1 = 1 + a - x``. ``L_{-1}`` is taken as zero.

    Parameters
    ----------
    n : int
        Degree, ``n >= -1``.
    a : float
        Superscript parameter; any finite real value.
    x : float or array_like
        Evaluation points.

    Returns
    -------
    float or numpy.ndarray
        Same shape as ``x``.
    """
    if n < -1:
        raise ValueError(f"degree must be >= -1, got {n}")
    x = np.asarray(x, dtype=float)
    if n == -1:
        out = np.zeros_like(x)
    elif n == 0:
        out = np.ones_like(x)
    else:
        prev, cur = np.ones_like(x), 1.0 + a - x
        for k in range(2, n + 1):
            prev, cur = cur, ((2 * k - 1 + a - x) * cur - (k - 1 + a) * prev) / k
        out = cur
    return out[()] if out.ndim == 0 else out


def laguerre_table(n_max: int, a: float, x) -> np.ndarray:
    """All of ``L_0^a(x) .. L_{n_max}^a(x)`` stacked along a new leading axis."""
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1.0 + a - x
    for k in range(2, n_max + 1):
        table[k] = ((2 * k - 1 + a - x) * table[k - 1] - (k - 1 + a) * table[k - 2]) / k
    return table


def laguerre_function_table(n_max: int, a: float, x, power: float) -> np.ndarray:
    """``x**power * exp(-x/2) * L_n^a(x)`` for ``n = 0 .. n_max``.

    The weight is folded in through a running log-scale so that large ``x``
    (where ``L_n`` overflows and ``exp(-x/2)`` underflows) stays finite.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        log_w = power * np.log(x) - 0.5 * x
    if power == 0:
        log_w = np.where(x == 0, 0.0, log_w)
    log_scale = np.zeros_like(x)
    out = np.empty((n_max + 1,) + x.shape)
    prev = np.ones_like(x)
    out[0] = np.exp(log_w)
    if n_max == 0:
        return out
    cur = 1.0 + a - x
    out[1] = cur * np.exp(log_w)
    for k in range(2, n_max + 1):
        prev, cur = cur, ((2 * k - 1 + a - x) * cur - (k - 1 + a) * prev) / k
        big = np.abs(cur) > _RESCALE
        if big.any():
            cur = np.where(big, cur / _RESCALE, cur)
            prev = np.where(big, prev / _RESCALE, prev)
            log_scale = log_scale + np.where(big, np.log(_RESCALE), 0.0)
        out[k] = cur * np.exp(log_w + log_scale)
    return out


def generating_sum_truncated(a: float, y: complex, x, n_max: int):
    """Partial sum ``sum_{n=0}^{n_max} y**n L_n^a(x)``."""
    if abs(y) >= 1:
        raise DomainError(f"generating series needs |y| < 1, got |y|={abs(y)}")
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    yn = 1.0 + 0.0j
    for k in range(n_max + 1):
        if k == 1:
            prev, cur = cur, 1.0 + a - x
        elif k >= 2:
            prev, cur = cur, ((2 * k - 1 + a - x) * cur - (k - 1 + a) * prev) / k
        total += yn * cur
        yn *= y
    return total[()] if total.ndim == 0 else total


def generating_closed(a: float, y: complex, x):
    """Closed form ``exp(-x y / (1 - y)) / (1 - y)**(a + 1)`` of the Laguerre generating function.

    Principal branches are used; they are continuous on ``|y| < 1`` because
    ``Re(1 - y) > 0`` there.
    """
    y = complex(y)
    if abs(y) >= 1:
        raise DomainError(f"generating function needs |y| < 1, got |y|={abs(y)}")
    x = np.asarray(x, dtype=float)
    out = np.exp(-x * y / (1.0 - y)) * (1.0 - y) ** (-(a + 1.0))
    return out[()] if np.ndim(out) == 0 else out

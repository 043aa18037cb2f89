from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, gammaln, roots_genlaguerre

from dirac_oscillator.errors import DomainError
from dirac_oscillator.special import (generating_closed, generating_sum_truncated, laguerre,
                                      laguerre_function_table, laguerre_table)


def exact_laguerre(n, a, x):
    """Explicit sum sum_i (-1)^i binom(n + a, n - i) x^i / i! in exact rationals."""
    a, x = Fraction(a), Fraction(x)
    total = Fraction(0)
    for i in range(n + 1):
        binom = Fraction(1)
        for j in range(n - i):
            binom *= (a + i + 1 + j)
        binom /= factorial(n - i)
        total += (-1) ** i * binom * x ** i / factorial(i)
    return total


@pytest.mark.parametrize("n", [0, 1, 2, 5, 9])
@pytest.mark.parametrize("a", [Fraction(-1, 2), Fraction(3, 2), Fraction(4)])
@pytest.mark.parametrize("x", [Fraction(1, 10), Fraction(3), Fraction(17, 2)])
def test_recurrence_matches_exact_sum(n, a, x):
    want = float(exact_laguerre(n, a, x))
    assert laguerre(n, float(a), float(x)) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_degree_minus_one_is_zero():
    assert np.all(laguerre(-1, 1.5, np.linspace(0, 5, 7)) == 0)
    with pytest.raises(ValueError):
        laguerre(-2, 0.0, 1.0)


def test_l2_has_two_positive_roots():
    # L_2^{1.5}: roots of x^2/2 - 3.5 x + 4.375, both in (0, inf).
    x = np.linspace(1e-3, 20, 4001)
    v = laguerre(2, 1.5, x)
    assert np.count_nonzero(np.diff(np.sign(v))) == 2


def test_gauss_laguerre_orthogonality():
    a = 1.5
    nodes, weights = roots_genlaguerre(40, a)
    table = laguerre_table(6, a, nodes)
    gram = (table * weights) @ table.T
    norms = np.exp(gammaln(np.arange(7) + a + 1) - gammaln(np.arange(7) + 1))
    assert np.allclose(gram, np.diag(norms), rtol=1e-11, atol=1e-10)


def test_function_table_survives_large_argument():
    x = np.array([10.0, 500.0, 1500.0])
    tab = laguerre_function_table(200, 1.5, x, 0.75)
    assert np.all(np.isfinite(tab))
    # at moderate x it agrees with the plain product
    plain = x[0] ** 0.75 * np.exp(-x[0] / 2) * eval_genlaguerre(np.arange(201), 1.5, x[0])
    assert np.allclose(tab[:, 0], plain, rtol=1e-9, atol=1e-300)


def test_generating_function_pole_rejected():
    with pytest.raises(DomainError):
        generating_closed(1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        generating_sum_truncated(1.0, 1.2, 2.0, 10)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 30), st.floats(-0.9, 6), st.floats(0, 30))
def test_matches_scipy(n, a, x):
    want = eval_genlaguerre(n, a, x)
    assert laguerre(n, a, x) == pytest.approx(want, rel=1e-9, abs=1e-9 * max(1.0, abs(want)))


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6), st.floats(0, 10), st.floats(-0.5, 4))
def test_generating_function_partial_sum(yr, yi, x, a):
    y = complex(yr, yi)
    if abs(y) >= 0.8:
        return
    total = generating_sum_truncated(a, y, x, 200)
    closed = generating_closed(a, y, x)
    assert abs(total - closed) < 1e-9 * max(1.0, abs(closed))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_oscillator.errors import DegenerateEnergy, DomainError, TailNotConverged
from dirac_oscillator.spectrum import ModelParams, SymmetryLimit, solve_spectrum
from dirac_oscillator.su11 import Grid, GridFunction, OperatorContext, apply_B3
from dirac_oscillator.wavefunctions import (RadialState, analytic_norm, count_nodes, eval_R1,
                                            eval_R2, first_order_image, normalization_constant,
                                            normalize, overlap_matrix, sigma, upper_profile)

CURVED = ModelParams(alpha=1, mu=0.1, w=1, A=0.3, lam=1, l=1)


@pytest.fixture(params=[SymmetryLimit.SPIN, SymmetryLimit.PSEUDOSPIN])
def limit(request):
    return request.param


def test_state_requires_accepted_root():
    sol = solve_spectrum(CURVED)
    rejected = [i for i in range(4) if i not in sol.physical]
    with pytest.raises(DomainError):
        RadialState.from_solution(sol, rejected[0])


def test_k_equals_half_plus_sigma(limit):
    state = RadialState.solve(CURVED, limit)
    assert state.k == pytest.approx(0.5 + sigma(CURVED, limit), abs=1e-15)


def test_ground_state_positive_and_vanishes_at_origin(limit):
    state = RadialState.solve(CURVED, limit)
    r = np.linspace(1e-6, 6, 500)
    v = eval_R1(state, r)
    assert np.all(v > 0)
    assert v[0] < 1e-5


@pytest.mark.parametrize("n", range(7))
def test_node_count(limit, n):
    state = RadialState.solve(CURVED.with_n(n), limit)
    r = np.linspace(1e-3, 10, 8000)
    assert count_nodes(eval_R1(state, r)) == n


def test_example_two_nodes():
    r = np.linspace(1e-3, 8, 8000)
    assert count_nodes(upper_profile(2, 1.25, 1.0, r)) == 2


def test_normalization_vs_gamma_integral(limit):
    state = RadialState.solve(CURVED, limit)
    assert normalize(state) == pytest.approx(state.norm, rel=1e-8)
    assert normalize(state, n_quad=64) == pytest.approx(normalize(state), rel=1e-9)


def test_normalization_is_projective():
    state = RadialState.solve(CURVED)
    base = lambda r: upper_profile(0, state.k, state.delta, np.maximum(r, 1e-300))
    r_max = 12.0
    n1 = normalization_constant(base, r_max)
    n2 = normalization_constant(lambda r: 2.0 * base(r), r_max)
    assert n1 == pytest.approx(2.0 * n2, rel=1e-14)


def test_short_cutoff_raises():
    state = RadialState.solve(CURVED)
    with pytest.raises(TailNotConverged):
        normalize(state, r_max=1.0)


def test_flat_lower_component_ground_state():
    # n = 0: bracket is b_lin r^2 + b_const, so R2 = alpha/(1+eps) (...) R1 / r
    state = RadialState.solve(ModelParams(alpha=0.5, w=1, lam=1, l=1))
    r = np.linspace(0.1, 3, 50)
    b_lin = 1.0 - state.delta
    b_const = 2 * state.k - 0.5 + 1.0
    want = 0.5 / (1 + state.eps) * (b_lin * r + b_const / r) * eval_R1(state, r)
    assert np.allclose(eval_R2(state, r), want, rtol=1e-13)


@pytest.mark.parametrize("n", range(4))
def test_lower_component_satisfies_first_order_relation(n):
    state = RadialState.solve(CURVED.with_n(n))
    r = np.linspace(0.2, 4.0, 60)
    exact = eval_R2(state, r)
    errs = []
    for h in (2e-3, 1e-3):
        fd = first_order_image(state, r, h)
        errs.append(np.max(np.abs(fd - exact)) / np.max(np.abs(exact)))
    assert errs[1] < 2e-5
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)


def test_other_gamma_breaks_first_order_relation():
    state = RadialState.solve(CURVED.with_n(1))
    shifted = RadialState.from_solution(solve_spectrum(CURVED.with_n(1)), gamma=state.k)
    r = np.linspace(0.2, 4.0, 60)
    fd = first_order_image(state, r, 1e-3)
    assert np.max(np.abs(fd - eval_R2(shifted, r))) / np.max(np.abs(fd)) > 1e-2


def test_lower_component_pole():
    state = RadialState.frozen(CURVED, SymmetryLimit.SPIN, eps=-1.0, delta=1.0)
    with pytest.raises(DegenerateEnergy):
        eval_R2(state, 1.0)


def test_rejects_non_positive_radius():
    state = RadialState.solve(CURVED)
    with pytest.raises(DomainError):
        eval_R1(state, 0.0)


def test_frozen_width_orthogonality():
    state = RadialState.solve(CURVED)
    gram = overlap_matrix(state, 4)
    assert np.allclose(gram, np.eye(5), atol=1e-7)


def test_eigenfunction_of_grid_operator(limit):
    # Phi(x) = x^{1/4} R1(r(x)) is an eigenfunction of B3 with eigenvalue k + n
    state = RadialState.solve(CURVED.with_n(2), limit)
    ctx = OperatorContext.from_params(state.params, limit)
    grid = Grid.uniform(4096, 60.0)
    x = grid.points
    phi = GridFunction(grid, x ** 0.25 * eval_R1(state, np.sqrt(x / state.delta)))
    resid = apply_B3(ctx, phi) - (ctx.k + 2) * phi
    assert resid.norm(trim=8) / phi.norm(trim=8) < 1e-3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.floats(0.55, 3.0), st.floats(0.2, 5.0))
def test_analytic_norm_matches_quadrature(n, k, delta):
    profile = lambda r: upper_profile(n, k, delta, np.maximum(r, 1e-300))
    r_max = math.sqrt((80 + 8 * n + 4 * k) / delta)
    assert normalization_constant(profile, r_max, n_quad=48) == pytest.approx(
        analytic_norm(n, k, delta), rel=1e-8)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_oscillator.spectrum import ModelParams, SymmetryLimit
from dirac_oscillator.su11 import (Grid, GridFunction, OperatorContext, apply_B3, apply_Tminus,
                                   apply_Tplus, casimir_defect, commutator_defect, eigenfunction,
                                   expectation_B3, ladder_coefficient,
                                   lowering_commutator_defect)

BUMP = lambda x: np.exp(-(x - 15.0) ** 2 / 6.0)


@pytest.fixture(params=[SymmetryLimit.SPIN, SymmetryLimit.PSEUDOSPIN])
def ctx(request):
    return OperatorContext.from_params(ModelParams(alpha=1, A=0.3, lam=1, l=1), request.param)


def test_grid_layout():
    g = Grid.uniform(2048, 40.0)
    assert g.points[0] == g.h and g.points[-1] == pytest.approx(40.0)
    assert g.refined().h == g.h / 2
    with pytest.raises(ValueError):
        Grid.uniform(16, 1.0)


def test_context_rejects_inconsistent_coefficient():
    with pytest.raises(ValueError):
        OperatorContext(1.25, 0.0)


def test_defects_are_second_order(ctx):
    d = []
    for n in (1024, 2048, 4096):
        f = GridFunction.from_callable(Grid.uniform(n, 40.0), BUMP)
        d.append(commutator_defect(ctx, f) + (lowering_commutator_defect(ctx, f),
                                              casimir_defect(ctx, f)))
    d = np.array(d)
    assert np.all(d[1] < 1e-3)
    assert np.all((d[:-1] / d[1:] > 3.8) & (d[:-1] / d[1:] < 4.2))


def test_wrong_commutator_sign_is_detected(ctx):
    # [B3, T+] = -T+ would leave a defect of order 2, not O(h^2).
    f = GridFunction.from_callable(Grid.uniform(2048, 40.0), BUMP)
    tpf = apply_Tplus(ctx, f)
    wrong = apply_B3(ctx, tpf) - apply_Tplus(ctx, apply_B3(ctx, f)) + tpf
    assert wrong.norm() / tpf.norm() > 1.0


@pytest.mark.parametrize("n", range(6))
def test_eigenvalue_ladder(ctx, n):
    f = eigenfunction(ctx, Grid.for_level(n), n)
    assert expectation_B3(ctx, f) == pytest.approx(ctx.k + n, abs=5e-3)


def test_lowering_annihilates_ground(ctx):
    f0 = eigenfunction(ctx, Grid.for_level(0), 0)
    assert apply_Tminus(ctx, f0).norm() / f0.norm() < 1e-3


@pytest.mark.parametrize("n", range(4))
def test_ladder_coefficients(ctx, n):
    grid = Grid.for_level(n + 1)
    a, b = eigenfunction(ctx, grid, n), eigenfunction(ctx, grid, n + 1)
    up, misfit = ladder_coefficient(a, b, apply_Tplus(ctx, a))
    down, _ = ladder_coefficient(b, a, apply_Tminus(ctx, b))
    want = np.sqrt((n + 1) * (n + 2 * ctx.k))
    assert misfit < 1e-3
    assert up.real == pytest.approx(-want, rel=1e-3)
    assert down.real == pytest.approx(-want, rel=1e-3)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.55, 3.0), st.floats(10, 22), st.floats(3, 10))
def test_casimir_on_random_bumps(k, centre, width):
    ctx = OperatorContext.from_k(k)
    f = GridFunction.from_callable(Grid.uniform(2048, 40.0),
                                   lambda x: np.exp(-(x - centre) ** 2 / width))
    assert casimir_defect(ctx, f) < 1e-3

import warnings

import numpy as np
import pytest

from tomokit.grids import Grid1D
from tomokit.oracles import coherent_dyad_operator
from tomokit.states import CatState, CoherentState, GridDensityMatrix, discretize
from tomokit.weyl import (
    NyquistWarning, PhaseSpaceGrid, WeylSymbolGrid, groenewold_star, operator_from_weyl, weyl_symbol,
    wigner_from_wavefunction,
)

AXIS = Grid1D(-7.0, 7.0, 128)


def test_vacuum_wigner():
    W = wigner_from_wavefunction(discretize(CoherentState.vacuum(1), [Grid1D(-6, 6, 129)]))
    q, p = W.grid.position[0].nodes, W.grid.momentum[0].nodes
    assert np.max(np.abs(W.samples - 2 * np.exp(-q[:, None] ** 2 - p[None, :] ** 2))) < 1e-6
    assert W.argmax() == pytest.approx((0.0, 0.0))
    assert W.samples.max() == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("state", [CoherentState((0.8 - 0.3j,)), CatState((1.2j,), -1), CatState((0.9,), 1)])
def test_wigner_normalization(state):
    W = wigner_from_wavefunction(discretize(state, [Grid1D.with_spacing(8.0, 0.1)]))
    assert W.normalization() == pytest.approx(1.0, abs=1e-6)
    assert W.imag_residual < 1e-8


def test_two_mode_wigner_normalization():
    ax = Grid1D.with_spacing(7.5, 0.15)
    W = wigner_from_wavefunction(discretize(CatState((0.7, -0.4j), 1), [ax, ax]),
                                 PhaseSpaceGrid.for_axes([ax, ax], stride=4))
    assert W.normalization() == pytest.approx(1.0, abs=1e-6)


def test_symbol_of_vacuum_projector_matches_wigner():
    psi = discretize(CoherentState.vacuum(1), [AXIS])
    grid = PhaseSpaceGrid.for_axes([AXIS], stride=2)
    w = weyl_symbol(GridDensityMatrix.from_wavefunction(psi), grid)
    W = wigner_from_wavefunction(psi, grid)
    assert np.max(np.abs(w.samples - W.samples)) < 1e-12
    assert np.max(np.abs(w.samples.imag)) < 1e-8


def test_identity_symbol_is_one():
    grid = PhaseSpaceGrid.for_axes([AXIS], stride=2)
    ident = weyl_symbol(GridDensityMatrix.identity(AXIS), grid)
    assert np.allclose(ident.samples, 1.0)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_round_trip(alpha):
    rho = coherent_dyad_operator(alpha, alpha, AXIS)
    grid = PhaseSpaceGrid.for_axes([AXIS])
    back = operator_from_weyl(weyl_symbol(rho, grid), AXIS)
    assert np.max(np.abs(back.samples - rho.samples)) <= 1e-4


def test_star_identity_and_idempotence():
    grid = PhaseSpaceGrid.for_axes([AXIS])
    vac = weyl_symbol(coherent_dyad_operator(0, 0, AXIS), grid)
    assert groenewold_star(WeylSymbolGrid.identity(grid), vac).max_abs_diff(vac) <= 1e-4
    assert groenewold_star(vac, vac).max_abs_diff(vac) <= 1e-3


def test_sampled_constant_symbol_acts_as_identity_up_to_truncation():
    # a sampled constant does not decay at the grid edge, so the result is only approximate
    axis = Grid1D(-10, 10, 160)
    grid = PhaseSpaceGrid.for_axes([axis])
    v = weyl_symbol(coherent_dyad_operator(0.3, 0.3, axis), grid)
    one = WeylSymbolGrid.from_function(grid, lambda q, p: np.ones_like(q))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert groenewold_star(one, v).max_abs_diff(v) < 1e-2


def test_star_matches_operator_product():
    grid = PhaseSpaceGrid.for_axes([AXIS])
    a = coherent_dyad_operator(0.4 + 0.2j, -0.3j, AXIS)
    b = coherent_dyad_operator(0.1, 0.5, AXIS)
    lhs = groenewold_star(weyl_symbol(a, grid), weyl_symbol(b, grid))
    assert lhs.max_abs_diff(weyl_symbol(a.matmul(b), grid)) < 1e-8


def test_nyquist_warning():
    ax = Grid1D(-5, 5, 41)
    with pytest.warns(NyquistWarning):
        wigner_from_wavefunction(discretize(CoherentState.vacuum(1), [ax]),
                                 PhaseSpaceGrid.for_axes([ax], stride=2, p_max=20.0))

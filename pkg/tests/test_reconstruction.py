import numpy as np
import pytest

from tomokit.catlab import cat_linear_entropy
from tomokit.errors import AccuracyError
from tomokit.grids import Grid1D
from tomokit.reconstruction import (
    DualSymbol, ReconstructionError, density_from_cm_tomogram, dual_symbol, mean_value,
    moments_from_tomogram, purity_from_cm,
)
from tomokit.states import CatState, CoherentState, GridDensityMatrix, discretize, reduce_to_mode
from tomokit.tomography import StateTomogram, TomographicQuery

AXIS = Grid1D(-8.0, 8.0, 128)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_round_trip_coherent(alpha):
    st = CoherentState((alpha,))
    psi = discretize(st, [AXIS])
    rho = density_from_cm_tomogram(StateTomogram(st), AXIS)
    assert rho.frobenius_distance(GridDensityMatrix.from_wavefunction(psi)) <= 1e-3
    assert rho.expectation(psi) >= 0.999


def test_round_trip_reduced_cat():
    # even-cat single-mode state, reconstructed from its closed-form tomogram
    st = CatState((0.9 + 0.3j,), 1)
    rho = density_from_cm_tomogram(StateTomogram(st), AXIS)
    ref = GridDensityMatrix.from_wavefunction(discretize(st, [AXIS]))
    assert rho.frobenius_distance(ref) <= 1e-3


def test_round_trip_from_plain_callable():
    st = CoherentState((0.5j,))
    tomo = StateTomogram(st)
    rho = density_from_cm_tomogram(lambda X, m, v: tomo(X, m, v), AXIS)
    ref = GridDensityMatrix.from_wavefunction(discretize(st, [AXIS]))
    assert rho.frobenius_distance(ref) <= 1e-3


def test_reconstruction_rejects_unnormalized():
    tomo = StateTomogram(CoherentState.vacuum(1))
    with pytest.raises(ReconstructionError):
        density_from_cm_tomogram(lambda X, m, v: 2 * tomo(X, m, v), AXIS)


def test_dual_symbol_examples():
    # at mu = nu = 0 the dual symbol reduces to the trace, (2 pi)^-1
    assert complex(DualSymbol.vacuum()(0.0, 0.0, 0.0)) == pytest.approx(1 / (2 * np.pi))
    val = dual_symbol("vacuum", TomographicQuery(0.3, [2.0], [0.0]))
    assert abs(val) == pytest.approx(np.exp(-1) / (2 * np.pi), abs=1e-6)
    grid_op = GridDensityMatrix.from_wavefunction(discretize(CoherentState.vacuum(1), [AXIS]))
    assert dual_symbol(grid_op, TomographicQuery(0.3, [2.0], [0.0])) == pytest.approx(val, abs=1e-6)
    with pytest.raises(ValueError):
        dual_symbol("bogus", TomographicQuery(0.3, [2.0], [0.0]))


def test_mean_values():
    vac = StateTomogram(CoherentState.vacuum(1))
    coh = StateTomogram(CoherentState((1.0,)))
    assert mean_value(vac, DualSymbol.vacuum()) == pytest.approx(1.0, abs=1e-3)
    assert mean_value(coh, DualSymbol.vacuum()) == pytest.approx(np.exp(-1), abs=1e-3)
    assert mean_value(coh, DualSymbol.identity()) == pytest.approx(1.0, abs=1e-3)


def test_damped_position_matches_first_moment():
    coh = StateTomogram(CoherentState((1.0,)))
    m1 = moments_from_tomogram(coh, [1.0], [0.0], 1)
    assert mean_value(coh, DualSymbol.damped_position()) == pytest.approx(m1, abs=1e-3)


def test_moments():
    vac = StateTomogram(CoherentState.vacuum(1))
    assert moments_from_tomogram(vac, [0.3], [-0.7], 1) == pytest.approx(0.0, abs=1e-12)
    assert moments_from_tomogram(vac, [1.0], [0.0], 2) == pytest.approx(0.5, abs=1e-4)
    coh = StateTomogram(CoherentState((1.0,)))
    assert moments_from_tomogram(coh, [1.0], [0.0], 1) == pytest.approx(np.sqrt(2), abs=1e-4)


def test_heavy_tails_raise():
    cauchy = lambda X, m, v: 1 / (np.pi * (1 + (np.asarray(X) / np.hypot(m[..., 0], v[..., 0])) ** 2)) / np.hypot(
        m[..., 0], v[..., 0])
    with pytest.raises(AccuracyError):
        moments_from_tomogram(cauchy, [1.0], [0.0], 2)


def test_purity_examples():
    assert purity_from_cm(StateTomogram(CoherentState.vacuum(2))) == pytest.approx(1.0, abs=1e-3)
    p = purity_from_cm(StateTomogram(CatState((1, 1), 1)))
    assert p == pytest.approx(1 - cat_linear_entropy(1, 1, 1), abs=1e-3)
    assert purity_from_cm(StateTomogram(CatState((0.8, 0.8j), -1))) == pytest.approx(0.5, abs=1e-3)


def test_purity_matches_reduced_density_matrix():
    st = CatState((0.7, -0.5), 1)
    ref = reduce_to_mode(discretize(st), 0).purity()
    assert purity_from_cm(StateTomogram(st)) == pytest.approx(ref, abs=1e-3)

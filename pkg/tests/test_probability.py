import numpy as np
import pytest

from tomokit.grids import Grid1D
from tomokit.probability import (
    JointDistribution, MarginalDomainError, ParameterPrior, conditional_from_joint, density_from_joint,
    joint_distribution, x_marginal,
)
from tomokit.reconstruction import density_from_cm_tomogram
from tomokit.states import CoherentState, GridDensityMatrix, discretize
from tomokit.tomography import StateTomogram

VAC = StateTomogram(CoherentState.vacuum(1))
AXIS = Grid1D(-8.0, 8.0, 128)


def test_joint_examples():
    prior = ParameterPrior.gaussian()
    assert joint_distribution(VAC, prior, (0.0, [1.0], [0.0])) == pytest.approx(np.pi**-1.5 * np.exp(-1), abs=1e-6)
    W = JointDistribution(VAC, prior)
    assert x_marginal(W, np.array([1.0]), np.array([0.0])) == pytest.approx(np.exp(-1) / np.pi, abs=1e-4)


def test_zero_prior_gives_zero_joint():
    box = ParameterPrior("custom", density=lambda m, v: np.full(np.shape(m)[:-1], 0.25), half_width=1.0)
    assert joint_distribution(VAC, box, (0.0, [1.5], [0.0])) == 0.0
    with pytest.raises(MarginalDomainError):
        conditional_from_joint(JointDistribution(VAC, box), (0.0, [1.5], [0.0]))


def test_custom_prior_normalization_checked():
    with pytest.raises(ValueError):
        ParameterPrior("custom", density=lambda m, v: np.ones(np.shape(m)[:-1]), half_width=1.0)
    with pytest.raises(ValueError):
        ParameterPrior("custom", density=lambda m, v: 1.0)


def test_conditional_round_trip():
    rng = np.random.default_rng(7)
    W = JointDistribution(VAC, ParameterPrior.gaussian())
    worst = 0.0
    for _ in range(100):
        pt = (rng.normal() * 2, rng.normal(size=1), rng.normal(size=1))
        worst = max(worst, abs(conditional_from_joint(W, pt) - float(VAC(*pt))))
    assert worst <= 1e-6


def test_prior_invariance_and_normalization():
    W1 = JointDistribution(VAC, ParameterPrior.gaussian())
    W2 = JointDistribution(VAC, ParameterPrior.gaussian(width=2.0))
    pt = (0.4, [0.7], [-0.3])
    assert conditional_from_joint(W1, pt) == pytest.approx(conditional_from_joint(W2, pt), abs=1e-6)
    from tomokit.probability import ConditionalTomogram

    c = ConditionalTomogram(W1)
    y = np.linspace(-12, 12, 1201)
    assert np.trapezoid(c(y, np.array([0.7]), np.array([-0.3])), y) == pytest.approx(1, abs=1e-4)


def test_total_normalization():
    W = JointDistribution(VAC, ParameterPrior.gaussian())
    g = np.linspace(-6, 6, 121)
    M, V = np.meshgrid(g, g, indexing="ij")
    m = x_marginal(W, M.ravel()[:, None] + 1e-9, V.ravel()[:, None])
    total = np.trapezoid(np.trapezoid(m.reshape(M.shape), g, axis=1), g)
    assert total == pytest.approx(1.0, abs=1e-3)


def test_density_from_joint():
    W1 = JointDistribution(VAC, ParameterPrior.gaussian())
    W2 = JointDistribution(VAC, ParameterPrior.gaussian(width=2.0))
    rho1 = density_from_joint(W1, AXIS)
    ref = GridDensityMatrix.from_wavefunction(discretize(CoherentState.vacuum(1), [AXIS]))
    assert rho1.frobenius_distance(ref) <= 1e-3
    assert rho1.frobenius_distance(density_from_joint(W2, AXIS)) <= 1e-6
    from tomokit.probability import ConditionalTomogram

    assert rho1.frobenius_distance(density_from_cm_tomogram(ConditionalTomogram(W1), AXIS)) <= 1e-10

    coh = CoherentState((1.0,))
    rho = density_from_joint(JointDistribution(StateTomogram(coh), ParameterPrior.gaussian()), AXIS)
    assert rho.expectation(discretize(coh, [AXIS])) >= 0.999

"""Joint probability over (X, mu, nu) from a cm tomogram and a parameter prior."""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import quad
from .errors import TomokitError
from .grids import Grid1D
from .reconstruction import density_from_cm_tomogram
from .states import GridDensityMatrix


class MarginalDomainError(TomokitError, ZeroDivisionError):
    """The X-marginal of a joint distribution vanishes, so no conditional exists."""


class ParameterPrior:
    """Distribution P(mu, nu) of the tomographic parameters.

    The Gaussian prior pi^-N w^-2N exp(-(|mu|^2 + |nu|^2)/w^2) is normalized
    analytically. Custom priors declare a box ``[-half_width, half_width]^2N``
    outside which they vanish; their normalization is checked by quadrature.
    """

    def __init__(self, kind: str, n_modes: int = 1, width: float = 1.0, density: Callable | None = None,
                 half_width: float | None = None, points: int = 201, tol: float = 1e-6):
        if kind not in ("gaussian", "custom"):
            raise ValueError("prior kind must be 'gaussian' or 'custom'")
        if width <= 0:
            raise ValueError("prior width must be positive")
        self.kind = kind
        self.n_modes = n_modes
        self.width = float(width)
        self._density = density
        self.half_width = half_width
        if kind == "custom":
            if density is None or half_width is None:
                raise ValueError("custom priors need a density and a declared half_width")
            if n_modes > 2:
                raise ValueError("custom priors are checked for at most two modes")
            total = self._quadrature_norm(points if n_modes == 1 else 41)
            if abs(total - 1) > tol:
                raise ValueError(f"custom prior integrates to {total:.8g}, not 1")

    @classmethod
    def gaussian(cls, n_modes: int = 1, width: float = 1.0) -> "ParameterPrior":
        return cls("gaussian", n_modes, width)

    def _quadrature_norm(self, points: int) -> float:
        g = Grid1D.symmetric(self.half_width, points)
        axes = [g.nodes] * (2 * self.n_modes)
        mesh = np.meshgrid(*axes, indexing="ij")
        mu = np.stack(mesh[: self.n_modes], axis=-1)
        nu = np.stack(mesh[self.n_modes:], axis=-1)
        vals = self(mu, nu)
        for _ in range(2 * self.n_modes):
            vals = vals @ g.weights
        return float(vals)

    def __call__(self, mu, nu) -> np.ndarray:
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        if self.kind == "gaussian":
            r2 = np.sum(mu * mu + nu * nu, axis=-1)
            return np.exp(-r2 / self.width**2) / (np.pi * self.width**2) ** self.n_modes
        vals = np.asarray(self._density(mu, nu), float)
        if np.any(vals < 0):
            raise ValueError("prior density must be nonnegative")
        outside = np.any(np.abs(np.concatenate([mu, nu], axis=-1)) > self.half_width, axis=-1)
        return np.where(outside, 0.0, vals)


class JointDistribution:
    """W(X, mu, nu) = w(X | mu, nu) P(mu, nu)."""

    def __init__(self, wcm: Callable, prior: ParameterPrior):
        self.wcm = wcm
        self.prior = prior
        self.n_modes = prior.n_modes

    def __call__(self, X, mu, nu) -> np.ndarray:
        return np.real(self.wcm(X, mu, nu)) * self.prior(mu, nu)


def joint_distribution(wcm: Callable, prior: ParameterPrior, point) -> float:
    X, mu, nu = point
    mu, nu = np.atleast_1d(np.asarray(mu, float)), np.atleast_1d(np.asarray(nu, float))
    return float(JointDistribution(wcm, prior)(X, mu, nu))


def x_marginal(W: Callable, mu, nu) -> np.ndarray:
    """int W(X, mu, nu) dX, using the homogeneous X scale s = |(mu, nu)|."""
    s, _, _ = quad.split_direction(mu, nu)
    if np.any(s == 0):
        raise ValueError("degenerate direction: sigma must be positive")
    y = np.linspace(-quad.Y_HALF, quad.Y_HALF, quad.Y_POINTS)
    wy = np.full(y.size, y[1] - y[0])
    wy[[0, -1]] *= 0.5
    mu, nu = np.asarray(mu, float), np.asarray(nu, float)
    vals = W(s[..., None] * y, mu[..., None, :], nu[..., None, :])
    return s * (vals @ wy)


class ConditionalTomogram:
    """w(X | mu, nu) = W(X, mu, nu) / int W dX."""

    def __init__(self, W: Callable):
        self.W = W
        self.n_modes = getattr(W, "n_modes", None)

    def __call__(self, X, mu, nu) -> np.ndarray:
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        marg = x_marginal(self.W, mu, nu)
        if np.any(marg <= 0):
            raise MarginalDomainError("the X-marginal vanishes at this (mu, nu)")
        return self.W(X, mu, nu) / marg


def conditional_from_joint(W: Callable, point) -> float:
    X, mu, nu = point
    mu, nu = np.atleast_1d(np.asarray(mu, float)), np.atleast_1d(np.asarray(nu, float))
    return float(ConditionalTomogram(W)(X, mu, nu))


def density_from_joint(W: Callable, axis: Grid1D | None = None) -> GridDensityMatrix:
    """Reconstruct rho from the joint distribution by conditioning first."""
    return density_from_cm_tomogram(ConditionalTomogram(W), axis)

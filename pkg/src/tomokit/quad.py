"""Quadrature helpers shared by the tomographic transforms.

Tomogram callables follow one protocol: ``w(X, mu, nu)`` with ``mu`` and ``nu``
of shape ``S + (N,)`` and ``X`` broadcastable to ``S``. Homogeneity
w(lX, l mu, l nu) = w(X, mu, nu) / |l| lets every integral run on unit
directions, where widths are O(1).
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import AccuracyError

REGULATORS = (1e-2, 1e-3, 1e-4)

# unit-direction X range and spacing for characteristic functions
Y_HALF = 14.0
Y_POINTS = 561
# unit-direction k range for ray inversion
K_HALF = 12.0
K_POINTS = 481


def richardson(eps: Sequence[float], values: np.ndarray) -> np.ndarray:
    """Value at eps = 0 of the polynomial through (eps_i, values_i) (Neville)."""
    eps = np.asarray(eps, dtype=float)
    p = [np.asarray(v) for v in values]
    n = len(p)
    for m in range(1, n):
        p = [(eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i]) for i in range(n - m)]
    return p[0]


def split_direction(mu: np.ndarray, nu: np.ndarray):
    """Return (scale, unit mu, unit nu); zero directions get scale 0 and mu = e1."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    mu, nu = np.broadcast_arrays(mu, nu)
    s = np.sqrt(np.sum(mu * mu + nu * nu, axis=-1))
    safe = np.where(s > 0, s, 1.0)[..., None]
    um, un = mu / safe, nu / safe
    zero = s == 0
    if np.any(zero):
        um = um.copy()
        um[zero] = 0.0
        um[zero, 0] = 1.0
    return s, um, un


def characteristic_from_tomogram(w: Callable, mu, nu) -> np.ndarray:
    """int w(X, mu, nu) exp(iX) dX, vectorized over leading axes of mu/nu."""
    if hasattr(w, "characteristic"):
        return w.characteristic(mu, nu)
    s, um, un = split_direction(mu, nu)
    y = np.linspace(-Y_HALF, Y_HALF, Y_POINTS)
    wy = np.full(y.size, y[1] - y[0])
    wy[[0, -1]] *= 0.5
    vals = w(y, um[..., None, :], un[..., None, :])
    return np.sum(vals * wy * np.exp(1j * s[..., None] * y), axis=-1)


def ray_inverse(chi_ray: Callable[[np.ndarray], np.ndarray], y, regulators=REGULATORS, k_half=K_HALF, k_points=K_POINTS):
    """(2 pi)^-1 int exp(-i k y) chi(k) dk with a Gaussian regulator extrapolated to 0.

    ``chi_ray`` maps k of shape (K,) to values of shape ``B + (K,)``; ``y`` has
    shape ``B`` or broadcasts to it.
    """
    k = np.linspace(-k_half, k_half, k_points)
    wk = np.full(k.size, k[1] - k[0])
    wk[[0, -1]] *= 0.5
    chi = chi_ray(k)
    phase = np.exp(-1j * np.asarray(y, dtype=float)[..., None] * k)
    base = chi * phase * wk / (2 * np.pi)
    vals = [np.sum(base * np.exp(-e * k * k), axis=-1) for e in regulators]
    if len(vals) == 1:
        return vals[0]
    out = richardson(regulators, vals)
    if not np.all(np.isfinite(out)):
        raise AccuracyError("regulated Fourier inversion produced non-finite values")
    return out


def tomogram_from_characteristic(chi: Callable, X, mu, nu, regulators=REGULATORS, hermitian: bool = False) -> np.ndarray:
    """Invert chi(mu, nu) = int f e^{iX} dX along rays: f(X, mu, nu)."""
    s, um, un = split_direction(mu, nu)
    if np.any(s == 0):
        raise ValueError("tomographic query needs (mu, nu) != (0, 0)")
    y = np.asarray(X, dtype=float) / s

    def ray(k):
        return chi(k[:, None] * um[..., None, :], k[:, None] * un[..., None, :])

    out = ray_inverse(ray, y, regulators) / s
    return out.real if hermitian else out


def gauss_legendre(a: float, b: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w

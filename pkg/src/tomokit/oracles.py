"""Independent operator-level oracles on single-mode position grids.

These evaluate traces such as Tr[A delta(X - mu q - nu p)] directly from the
kernel A(x, x'), without touching the star-product kernel code, so they can
cross-check it.
"""
from __future__ import annotations

import numpy as np

from . import quad
from .grids import Grid1D
from .states import CoherentState, GridDensityMatrix, coherent_wavefunction


def coherent_dyad_operator(alpha: complex, beta: complex, axis: Grid1D) -> GridDensityMatrix:
    """Kernel <x|alpha><beta|x'> of a single-mode coherent dyad."""
    x = axis.nodes[:, None]
    a = coherent_wavefunction(CoherentState((alpha,)), x)
    b = coherent_wavefunction(CoherentState((beta,)), x)
    return GridDensityMatrix(axis, np.outer(a, b.conj()))


def cm_symbol_of_operator(a: GridDensityMatrix, X: float, mu: float, nu: float,
                          k_half: float = quad.K_HALF, k_points: int = 241) -> complex:
    """Tr[A delta(X - mu q - nu p)] = (2 pi)^-1 int dk e^{ikX} Tr[A e^{-ik(mu q + nu p)}]."""
    s = float(np.hypot(mu, nu))
    if s == 0:
        raise ValueError("degenerate query: sigma must be positive")
    k = np.linspace(-k_half, k_half, k_points) / s
    wk = np.full(k.size, k[1] - k[0])
    wk[[0, -1]] *= 0.5
    tr = a.characteristic(k * mu, k * nu)
    return complex(np.sum(wk * np.exp(1j * k * X) * tr) / (2 * np.pi))


def dual_symbol_of_operator(a: GridDensityMatrix, X: float, mu: float, nu: float) -> complex:
    """(2 pi)^-1 e^{iX} Tr[A e^{-i(mu q + nu p)}]."""
    return complex(np.exp(1j * X) * a.characteristic(mu, nu) / (2 * np.pi))


def pointwise_product_cm(za, zb, X: float, mu, nu) -> float:
    """cm symbol of the pointwise product of two coherent-projector Weyl symbols.

    Weyl symbols 2^N exp(-|z - z_a|^2) and 2^N exp(-|z - z_b|^2); the product is
    a Gaussian centred at their midpoint, whose normalized Radon transform is
    closed form.
    """
    za, zb = np.asarray(za, float), np.asarray(zb, float)
    mu, nu = np.atleast_1d(np.asarray(mu, float)), np.atleast_1d(np.asarray(nu, float))
    n = mu.size
    sig = float(mu @ mu + nu @ nu)
    zbar = 0.5 * (za + zb)
    centre = float(mu @ zbar[:n] + nu @ zbar[n:])
    d2 = float(np.sum((za - zb) ** 2))
    return float(np.exp(-d2 / 2) * np.sqrt(2 / (np.pi * sig)) * np.exp(-2 * (X - centre) ** 2 / sig))


def phase_point(alpha) -> np.ndarray:
    """(q, p) centre of a coherent state, ordered (q_1..q_N, p_1..p_N)."""
    a = np.atleast_1d(np.asarray(alpha, complex))
    return np.concatenate([np.sqrt(2) * a.real, np.sqrt(2) * a.imag])

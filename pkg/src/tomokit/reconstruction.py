"""Inverse maps: density matrices, dual symbols, mean values, moments and purity."""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import quad
from .errors import AccuracyError
from .grids import Grid1D
from .states import GridDensityMatrix
from .tomography import ClusterPartition, TomographicQuery, _padded, dyad_cm_characteristic


class ReconstructionError(AccuracyError):
    """The tomogram is not normalizable, so the inverse map diverges."""


class DualSymbol:
    """Dual cm symbol w^d(X, mu, nu) = (2 pi)^-N e^{iX} Tr[A exp(-i(mu.q + nu.p))].

    ``kind`` is ``"regular"`` when the trace is an ordinary function,
    ``"identity"`` for the identity operator (trace (2 pi)^N delta) and
    ``"diagonal"`` for multiplication operators f(q), whose trace is
    delta(nu) f^(mu) with f^ = int f(x) e^{-i mu x} dx.
    """

    def __init__(self, trace_function: Callable | None, tag: str = "", kind: str = "regular",
                 fourier: Callable | None = None, n_modes: int = 1):
        if kind not in ("regular", "identity", "diagonal"):
            raise ValueError(f"unknown dual-symbol kind {kind!r}")
        if kind == "regular" and trace_function is None:
            raise ValueError("regular dual symbols need a trace function")
        if kind == "diagonal" and fourier is None:
            raise ValueError("diagonal dual symbols need the Fourier transform of f")
        self.trace_function = trace_function
        self.tag = tag
        self.kind = kind
        self.fourier = fourier
        self.n_modes = n_modes

    def __call__(self, X, mu, nu) -> np.ndarray:
        if self.kind != "regular":
            raise ValueError(f"the {self.kind} dual symbol is a distribution")
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        if self.n_modes == 1 and mu.ndim and mu.shape[-1] == 1:
            mu, nu = mu[..., 0], nu[..., 0]
        return np.exp(1j * np.asarray(X)) * self.trace_function(mu, nu) / (2 * np.pi) ** self.n_modes

    @classmethod
    def from_operator(cls, a: GridDensityMatrix, tag: str = "grid") -> "DualSymbol":
        if a.is_identity:
            return cls.identity()
        return cls(a.characteristic, tag=tag)

    @classmethod
    def identity(cls) -> "DualSymbol":
        return cls(None, tag="identity", kind="identity")

    @classmethod
    def coherent_dyad(cls, alpha: complex, beta: complex) -> "DualSymbol":
        """|alpha><beta| for one mode; the trace is <beta|exp(-i(mu q + nu p))|alpha>."""
        a, b = np.array([alpha], complex), np.array([beta], complex)
        f = lambda mu, nu: dyad_cm_characteristic(a, b, -np.asarray(mu)[..., None], -np.asarray(nu)[..., None])
        return cls(f, tag=f"dyad({alpha},{beta})")

    @classmethod
    def vacuum(cls) -> "DualSymbol":
        return cls(lambda mu, nu: np.exp(-(np.asarray(mu) ** 2 + np.asarray(nu) ** 2) / 4), tag="vacuum")

    @classmethod
    def damped_position(cls, eps: float = 1e-5) -> "DualSymbol":
        """q exp(-eps q^2), a bounded stand-in for the position operator."""
        def fhat(mu):
            mu = np.asarray(mu, float)
            return -1j * np.sqrt(np.pi) * mu / (2 * eps**1.5) * np.exp(-mu * mu / (4 * eps))

        sym = cls(None, tag=f"q*exp(-{eps:g} q^2)", kind="diagonal", fourier=fhat)
        sym.width = 2 * np.sqrt(eps)
        return sym


_TAGS = {"vacuum": DualSymbol.vacuum, "identity": DualSymbol.identity}


def dual_symbol(a, q: TomographicQuery) -> complex:
    """Dual symbol of a grid operator, a ``DualSymbol`` or a tag ('vacuum', 'identity')."""
    if isinstance(a, str):
        if a not in _TAGS:
            raise ValueError(f"unknown operator tag {a!r}")
        a = _TAGS[a]()
    elif isinstance(a, GridDensityMatrix):
        a = DualSymbol.from_operator(a)
    if q.n_modes != a.n_modes:
        raise ValueError("query and operator have different numbers of modes")
    return complex(a(q.X, q.mu, q.nu))


def _chi(wcm, mu, nu):
    return quad.characteristic_from_tomogram(wcm, mu, nu)


def mean_value(wcm: Callable, wd: DualSymbol, half_width: float = 10.0, spacing: float = 0.2) -> float:
    """<A> = int wcm w^d dX dmu dnu for one mode.

    The X integral turns wcm into its characteristic function, leaving
    (2 pi)^-1 int Tr[A e^{-i(mu q + nu p)}] chi_w(mu, nu) dmu dnu.
    """
    if wd.n_modes != 1:
        raise ValueError("mean_value is implemented for one mode")
    if wd.kind == "identity":
        return float(np.real(_chi(wcm, np.array([0.0]), np.array([0.0]))))
    if wd.kind == "diagonal":
        w = getattr(wd, "width", 1.0)
        g = Grid1D.symmetric(12 * w, 801)
        chi = _chi(wcm, g.nodes[:, None], np.zeros((g.points, 1)))
        val = np.sum(g.weights * wd.fourier(g.nodes) * chi) / (2 * np.pi)
    else:
        g = Grid1D.with_spacing(half_width, spacing)
        mu, nu = np.meshgrid(g.nodes, g.nodes, indexing="ij")
        chi = _chi(wcm, mu[..., None], nu[..., None])
        tr = wd.trace_function(mu, nu)
        integrand = tr * chi
        edge = max(np.abs(integrand[[0, -1], :]).max(), np.abs(integrand[:, [0, -1]]).max())
        if edge > 1e-8:
            raise AccuracyError(f"mean-value integrand does not decay ({edge:.2e} at the edge)")
        val = np.sum(integrand * np.outer(g.weights, g.weights)) / (2 * np.pi)
    return float(np.real(val))


def moments_from_tomogram(wcm: Callable, mu, nu, order: int) -> float:
    """int X^n w(X, mu, nu) dX for n in {1, 2}."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    mu = np.atleast_1d(np.asarray(mu, float))
    nu = np.atleast_1d(np.asarray(nu, float))
    s, um, un = quad.split_direction(mu, nu)
    if s == 0:
        raise ValueError("degenerate query: sigma = |mu|^2 + |nu|^2 must be positive")
    y = np.linspace(-quad.Y_HALF, quad.Y_HALF, quad.Y_POINTS)
    wy = np.full(y.size, y[1] - y[0])
    wy[[0, -1]] *= 0.5
    vals = np.real(wcm(y, um[None, :], un[None, :])) * y**order
    if max(abs(vals[0]), abs(vals[-1])) > 1e-10:
        raise AccuracyError("tomogram has heavy tails; moment integral truncated")
    return float(s**order * (vals @ wy))


def density_from_cm_tomogram(wcm: Callable, axis: Grid1D | None = None, mu_half: float = 10.0,
                             mu_spacing: float = 0.1) -> GridDensityMatrix:
    """Single-mode density matrix from its cm tomogram.

    rho(x, x') = (2 pi)^-1 int dmu chi_w(mu, x - x') exp(-i mu (x + x')/2); the
    nu integral collapses because <x|e^{-i(mu q + nu p)}|x'> contains delta(x - x' - nu).
    """
    axis = axis or Grid1D(-8.0, 8.0, 128)
    n, h = axis.points, axis.spacing
    total = float(np.real(_chi(wcm, np.array([0.0]), np.array([0.0]))))
    if not np.isfinite(total) or abs(total - 1.0) > 1e-2:
        raise ReconstructionError(f"tomogram integrates to {total:.4g}, not 1")
    g = Grid1D.with_spacing(mu_half, mu_spacing)
    d = np.arange(-(n - 1), n) * h
    mu, nu = np.meshgrid(g.nodes, d, indexing="ij")
    chi = _chi(wcm, mu[..., None], nu[..., None])  # [mu, d]
    s = axis.half_grid().nodes  # (x + x')/2
    f = (np.exp(-1j * np.outer(s, g.nodes)) * g.weights) @ chi / (2 * np.pi)  # [s, d]
    a = np.arange(n)
    rho = f[a[:, None] + a[None, :], a[:, None] - a[None, :] + n - 1]
    return GridDensityMatrix(axis, rho)


def subsystem_profile(wcm: Callable, part: ClusterPartition, m: int, thetas: np.ndarray, z: np.ndarray,
                      regulators=quad.REGULATORS) -> list[np.ndarray]:
    """Subsystem tomograms w_m(z, cos t, sin t) on a grid, one array per regulator.

    Each row comes from the k-integral route: the joint characteristic function
    along the padded direction, inverted with a Gaussian regulator.
    """
    if part.sizes[m] != 1:
        raise ValueError("subsystem profiles are implemented for single-mode subsystems")
    k = np.linspace(-quad.K_HALF, quad.K_HALF, quad.K_POINTS)
    wk = np.full(k.size, k[1] - k[0])
    wk[[0, -1]] *= 0.5
    a = np.empty((thetas.size, part.n_modes))
    b = np.empty_like(a)
    for i, t in enumerate(thetas):
        a[i], b[i] = _padded(part, m, [np.cos(t)], [np.sin(t)])
    chi = _chi(wcm, k[None, :, None] * a[:, None, :], k[None, :, None] * b[:, None, :])  # [theta, k]
    ph = np.exp(-1j * np.outer(k, z)) * wk[:, None] / (2 * np.pi)  # [k, z]
    return [np.real((chi * np.exp(-e * k * k)) @ ph) for e in regulators]


def purity_from_cm(wcm: Callable, part: ClusterPartition = ClusterPartition((1, 1)), m: int = 0,
                   regulators=quad.REGULATORS, n_theta: int = 48) -> float:
    """Tr rho_m^2 of a single-mode subsystem, from the joint cm tomogram.

    purity = (2 pi)^-1 int |chi_m(mu, nu)|^2 dmu dnu, where chi_m is the Fourier
    transform in X of the subsystem tomogram; the polar form integrates over
    directions t in [0, 2 pi) and scale s >= 0 with weight s.
    """
    thetas = np.arange(n_theta) * 2 * np.pi / n_theta
    z = np.linspace(-quad.Y_HALF, quad.Y_HALF, quad.Y_POINTS)
    wz = np.full(z.size, z[1] - z[0])
    wz[[0, -1]] *= 0.5
    # s |chi|^2 is odd at s = 0, so a trapezoid rule would leave an O(h^2) endpoint term
    s, ws = quad.gauss_legendre(0.0, quad.K_HALF, 160)
    ft = np.exp(1j * np.outer(z, s)) * wz[:, None]  # [z, s]
    vals = []
    for prof in subsystem_profile(wcm, part, m, thetas, z, regulators):
        chi1 = prof @ ft  # [theta, s]
        vals.append(np.sum(np.abs(chi1) ** 2 @ (ws * s)) * (2 * np.pi / n_theta) / (2 * np.pi))
    p = float(quad.richardson(regulators, vals) if len(vals) > 1 else vals[0])
    if not (0.0 < p <= 1.0 + 1e-3):
        raise AccuracyError(f"purity {p:.6g} outside (0, 1]")
    return p

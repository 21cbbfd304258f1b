"""Symplectic, center-of-mass and cluster tomograms, and the maps between them.

A center-of-mass tomogram w(X, mu, nu) is the probability density of
X = mu.q + nu.p summed over all modes; the symplectic tomogram keeps one X per
mode and the cluster tomogram one X per subsystem of a partition.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quad
from .states import CatState, CoherentState, GridWavefunction, State, cat_normalization
from .weyl import WignerGrid


def _vec(v, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class TomographicQuery:
    """Point (X, mu, nu) of a center-of-mass tomogram; requires |mu|^2 + |nu|^2 > 0."""

    X: float
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        mu, nu = _vec(self.mu, "mu"), _vec(self.nu, "nu")
        if mu.shape != nu.shape:
            raise ValueError("mu and nu must have the same length")
        if not np.isfinite(self.X):
            raise ValueError("X must be finite")
        if float(mu @ mu + nu @ nu) <= 0.0:
            raise ValueError("degenerate query: sigma = |mu|^2 + |nu|^2 must be positive")
        object.__setattr__(self, "X", float(self.X))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def n_modes(self) -> int:
        return self.mu.size

    @property
    def sigma(self) -> float:
        return float(self.mu @ self.mu + self.nu @ self.nu)

    def scaled(self, lam: float) -> "TomographicQuery":
        return TomographicQuery(lam * self.X, lam * self.mu, lam * self.nu)


@dataclass(frozen=True, eq=False)
class SymplecticQuery:
    """Point (X_j, mu_j, nu_j) per mode; every (mu_j, nu_j) must be nonzero."""

    X: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        X, mu, nu = _vec(self.X, "X"), _vec(self.mu, "mu"), _vec(self.nu, "nu")
        if not X.shape == mu.shape == nu.shape:
            raise ValueError("X, mu and nu must have the same length")
        if np.any(mu * mu + nu * nu == 0):
            raise ValueError("degenerate query: every mode needs (mu_j, nu_j) != (0, 0)")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def n_modes(self) -> int:
        return self.mu.size


@dataclass(frozen=True)
class ClusterPartition:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("partition sizes must be positive integers")
        object.__setattr__(self, "sizes", sizes)

    @property
    def n_modes(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    def slices(self) -> list[slice]:
        edges = np.cumsum((0,) + self.sizes)
        return [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


@dataclass(frozen=True, eq=False)
class ClusterQuery:
    X: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    partition: ClusterPartition

    def __post_init__(self):
        X, mu, nu = _vec(self.X, "X"), _vec(self.mu, "mu"), _vec(self.nu, "nu")
        part = self.partition
        if X.size != part.r or mu.size != part.n_modes or nu.size != part.n_modes:
            raise ValueError("cluster query does not match its partition")
        for sl in part.slices():
            if float(mu[sl] @ mu[sl] + nu[sl] @ nu[sl]) == 0.0:
                raise ValueError("degenerate query: every subsystem needs a nonzero direction")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)


# --------------------------------------------------------------------------
# analytic tomograms


def dyad_overlap(alpha: np.ndarray, beta: np.ndarray) -> complex:
    """<beta|alpha> for multimode coherent states."""
    return complex(np.exp(-0.5 * np.sum(np.abs(alpha) ** 2) - 0.5 * np.sum(np.abs(beta) ** 2) + np.sum(np.conj(beta) * alpha)))


def dyad_center(alpha, beta, mu, nu) -> np.ndarray:
    """Complex center m of Tr[|alpha><beta| delta(X - mu.q - nu.p)], per mode (last axis)."""
    bc = np.conj(beta)
    return (mu * (alpha + bc) + 1j * nu * (bc - alpha)) / np.sqrt(2.0)


def dyad_cm_tomogram(alpha, beta, X, mu, nu) -> np.ndarray:
    """Tr[|alpha><beta| delta(X - mu.q - nu.p)] (complex unless alpha = beta)."""
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    mu, nu = np.asarray(mu, float), np.asarray(nu, float)
    sig = np.sum(mu * mu + nu * nu, axis=-1)
    m = np.sum(dyad_center(alpha, beta, mu, nu), axis=-1)
    return dyad_overlap(alpha, beta) * np.exp(-((X - m) ** 2) / sig) / np.sqrt(np.pi * sig)


def dyad_cm_characteristic(alpha, beta, mu, nu) -> np.ndarray:
    """<beta| exp(i(mu.q + nu.p)) |alpha>."""
    mu, nu = np.asarray(mu, float), np.asarray(nu, float)
    sig = np.sum(mu * mu + nu * nu, axis=-1)
    m = np.sum(dyad_center(np.asarray(alpha, complex), np.asarray(beta, complex), mu, nu), axis=-1)
    return dyad_overlap(np.asarray(alpha, complex), np.asarray(beta, complex)) * np.exp(-sig / 4 + 1j * m)


def dyad_symplectic_tomogram(alpha, beta, X, mu, nu) -> np.ndarray:
    """Tr[|alpha><beta| prod_j delta(X_j - mu_j q_j - nu_j p_j)], X of shape (..., N)."""
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    mu, nu = np.asarray(mu, float), np.asarray(nu, float)
    sig = mu * mu + nu * nu
    m = dyad_center(alpha, beta, mu, nu)
    per = np.exp(-((X - m) ** 2) / sig) / np.sqrt(np.pi * sig)
    return dyad_overlap(alpha, beta) * np.prod(per, axis=-1)


def _cat_dyads(state: CatState):
    a = state.alpha
    n2 = cat_normalization(state.alphas, state.parity) ** 2
    par = state.parity
    return [(a, a, n2), (-a, -a, n2), (a, -a, par * n2), (-a, a, par * n2)]


def _state_dyads(state: State):
    if isinstance(state, CatState):
        return _cat_dyads(state)
    if isinstance(state, CoherentState):
        return [(state.alpha, state.alpha, 1.0)]
    raise TypeError(f"unsupported state type {type(state).__name__}")


def cat_cm_closed_form(alpha, parity: int, X, mu, nu) -> np.ndarray:
    """Four-term closed form of the cat center-of-mass tomogram (any N).

    Direct terms are Gaussians centred at +-a; the interference pair combines to
    2 e^{-2|alpha|^2} exp((b^2 - X^2)/sigma) cos(2 b X / sigma).
    """
    alpha = np.asarray(alpha, dtype=complex)
    mu, nu = np.asarray(mu, float), np.asarray(nu, float)
    sig = np.sum(mu * mu + nu * nu, axis=-1)
    a = np.sqrt(2.0) * np.sum(alpha.real * mu + alpha.imag * nu, axis=-1)
    b = np.sqrt(2.0) * np.sum(alpha.imag * mu - alpha.real * nu, axis=-1)
    n2 = float(np.sum(np.abs(alpha) ** 2))
    norm2 = cat_normalization(alpha, parity) ** 2
    direct = np.exp(-((X - a) ** 2) / sig) + np.exp(-((X + a) ** 2) / sig)
    inter = 2.0 * np.exp(-2.0 * n2 + (b * b - X * X) / sig) * np.cos(2.0 * b * X / sig)
    return norm2 * (direct + parity * inter) / np.sqrt(np.pi * sig)


class StateTomogram:
    """Center-of-mass tomogram of an analytic coherent or cat state."""

    def __init__(self, state: State):
        self.state = state
        self.n_modes = state.n_modes

    def __call__(self, X, mu, nu) -> np.ndarray:
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        if mu.shape[-1] != self.n_modes or nu.shape[-1] != self.n_modes:
            raise ValueError(f"directions must have {self.n_modes} components")
        st = self.state
        if isinstance(st, CatState):
            return cat_cm_closed_form(st.alpha, st.parity, X, mu, nu)
        sig = np.sum(mu * mu + nu * nu, axis=-1)
        m = np.sqrt(2.0) * np.sum(st.alpha.real * mu + st.alpha.imag * nu, axis=-1)
        return np.exp(-((X - m) ** 2) / sig) / np.sqrt(np.pi * sig)

    def characteristic(self, mu, nu) -> np.ndarray:
        out = 0
        for a, b, c in _state_dyads(self.state):
            out = out + c * dyad_cm_characteristic(a, b, mu, nu)
        return out


class StateSymplecticTomogram:
    """Symplectic tomogram of an analytic state: ``ws(X, mu, nu)`` with X of shape (..., N)."""

    def __init__(self, state: State):
        self.state = state
        self.n_modes = state.n_modes

    def __call__(self, X, mu, nu) -> np.ndarray:
        out = 0
        for a, b, c in _state_dyads(self.state):
            out = out + c * dyad_symplectic_tomogram(a, b, X, mu, nu)
        return np.real(out)


def cm_tomogram_analytic(state: State, q: TomographicQuery) -> float:
    if q.n_modes != state.n_modes:
        raise ValueError("query and state have different numbers of modes")
    return float(StateTomogram(state)(q.X, q.mu, q.nu))


# --------------------------------------------------------------------------
# Radon transform of grid Wigner functions


class CoverageWarning(UserWarning):
    """A Wigner grid does not contain the full support of the function."""


class WignerTomogram:
    """Center-of-mass tomogram of a grid Wigner function via the Fourier-slice theorem.

    The characteristic function along a ray is the exact trapezoid sum of
    W exp(ik(mu q + nu p)); the density follows from a Gauss-Legendre inversion
    over k in [0, K0/sqrt(sigma)].
    """

    def __init__(self, wigner: WignerGrid, k_max: float = 13.0, k_nodes: int = 64):
        self.wigner = wigner
        self.n_modes = wigner.grid.n_modes
        if self.n_modes not in (1, 2):
            raise ValueError("Radon transforms are implemented for one or two modes")
        s = np.abs(wigner.samples)
        edge = 0.0
        for ax in range(s.ndim):
            edge = max(edge, float(np.take(s, [0, -1], axis=ax).max()))
        if edge > 1e-6 * float(s.max()):
            warnings.warn(f"Wigner function is {edge:.2e} at the grid edge", CoverageWarning, stacklevel=2)
        g = wigner.grid
        self._axes = [(ax.nodes, ax.weights) for ax in g.position + g.momentum]
        self._w = wigner.samples.astype(complex) / (2 * np.pi) ** self.n_modes
        self.k_max = k_max
        self._kn, self._kw = quad.gauss_legendre(0.0, k_max, k_nodes)

    def _slice(self, k: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> np.ndarray:
        """chi(k mu, k nu) for a vector of k, one direction."""
        coeff = np.concatenate([mu, nu])
        t = self._w
        for i, (c, (x, w)) in enumerate(zip(coeff, self._axes)):
            e = w[:, None] * np.exp(1j * c * np.outer(x, k))
            if i == 0:
                t = np.tensordot(t, e, axes=([0], [0]))  # moves k to the end
            else:
                t = np.einsum("i...k,ik->...k", t, e)
        return t

    def characteristic(self, mu, nu) -> np.ndarray:
        mu, nu = np.broadcast_arrays(np.asarray(mu, float), np.asarray(nu, float))
        flat_m = mu.reshape(-1, self.n_modes)
        flat_n = nu.reshape(-1, self.n_modes)
        out = np.array([self._slice(np.ones(1), m, n)[0] for m, n in zip(flat_m, flat_n)])
        return out.reshape(mu.shape[:-1])

    def __call__(self, X, mu, nu) -> np.ndarray:
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        shape = np.broadcast_shapes(np.shape(X), mu.shape[:-1], nu.shape[:-1])
        Xb = np.broadcast_to(X, shape).ravel()
        mb = np.broadcast_to(mu, shape + (self.n_modes,)).reshape(-1, self.n_modes)
        nb = np.broadcast_to(nu, shape + (self.n_modes,)).reshape(-1, self.n_modes)
        out = np.empty(Xb.size)
        keys = np.concatenate([mb, nb], axis=1)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.ravel()
        for i, key in enumerate(uniq):
            m, n = key[: self.n_modes], key[self.n_modes:]
            s = float(np.sqrt(m @ m + n @ n))
            if s == 0:
                raise ValueError("degenerate query: sigma = |mu|^2 + |nu|^2 must be positive")
            sel = inv == i
            chi = self._slice(self._kn, m / s, n / s)
            y = Xb[sel] / s
            vals = (np.exp(-1j * np.outer(y, self._kn)) * chi).real @ self._kw / np.pi
            out[sel] = vals / s
        return out.reshape(shape)


def cm_tomogram_from_wigner(W: WignerGrid, q: TomographicQuery) -> float:
    if q.n_modes != W.grid.n_modes:
        raise ValueError("query and Wigner grid have different numbers of modes")
    return float(WignerTomogram(W)(q.X, q.mu, q.nu))


# --------------------------------------------------------------------------
# grid symplectic tomograms (per-mode chirp transforms)


def _mode_kernel(ax, mu: float, nu: float, y: np.ndarray) -> np.ndarray:
    """Rows map psi samples along one axis to amplitudes at quadrature values y.

    With |nu| >= |mu| the amplitude is (2 pi |nu|)^-1/2 int psi(x) exp(-i(y x - mu x^2/2)/nu) dx.
    Otherwise the mode is first taken to momentum space, where the quadrature reads
    nu p - mu (-q), i.e. the same formula with (mu, nu) -> (nu, -mu).
    """
    x, w = ax.nodes, ax.weights
    if abs(nu) >= abs(mu):
        ph = -(np.outer(y, x) - 0.5 * mu * x * x) / nu
        return np.exp(1j * ph) * w / np.sqrt(2 * np.pi * abs(nu))
    dft = np.exp(-1j * np.outer(x, x)) * w / np.sqrt(2 * np.pi)  # momenta on the same nodes
    m2, n2 = nu, -mu
    ph = -(np.outer(y, x) - 0.5 * m2 * x * x) / n2
    return (np.exp(1j * ph) * w / np.sqrt(2 * np.pi * abs(n2))) @ dft


def symplectic_density(psi: GridWavefunction, mu, nu, Y) -> np.ndarray:
    """Joint density of mu_j q_j + nu_j p_j at rows of ``Y`` (shape (M, N)).

    Modes with (mu_j, nu_j) = (0, 0) are traced out and their Y column is ignored.
    """
    mu, nu = _vec(mu, "mu"), _vec(nu, "nu")
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if mu.size != psi.modes or Y.shape[1] != psi.modes:
        raise ValueError("direction and wavefunction have different numbers of modes")
    live = [j for j in range(psi.modes) if mu[j] ** 2 + nu[j] ** 2 > 0]
    if not live:
        raise ValueError("degenerate query: all directions are zero")
    t = psi.samples
    if psi.modes == 1:
        amp = _mode_kernel(psi.axes[0], mu[0], nu[0], Y[:, 0]) @ t
        return np.abs(amp) ** 2
    k = {j: _mode_kernel(psi.axes[j], mu[j], nu[j], Y[:, j]) for j in live}
    if len(live) == 2:
        amp = np.einsum("mi,ij,mj->m", k[0], t, k[1])
        return np.abs(amp) ** 2
    j = live[0]
    other = psi.axes[1 - j]
    amp = k[j] @ (t if j == 0 else t.T)  # (M, n_other)
    return np.abs(amp) ** 2 @ other.weights


class GridSymplecticTomogram:
    """Symplectic tomogram of a grid wavefunction; ``ws(X, mu, nu)`` with X of shape (M, N)."""

    def __init__(self, psi: GridWavefunction):
        self.psi = psi
        self.n_modes = psi.modes

    def __call__(self, X, mu, nu) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        shape = X.shape[:-1]
        out = symplectic_density(self.psi, mu, nu, X.reshape(-1, self.n_modes))
        return out.reshape(shape)


def symplectic_tomogram(psi: GridWavefunction, q: SymplecticQuery) -> float:
    if q.n_modes != psi.modes:
        raise ValueError("query and wavefunction have different numbers of modes")
    return float(symplectic_density(psi, q.mu, q.nu, q.X[None, :])[0])


def _support_half_width(psi: GridWavefunction, mu: float, nu: float) -> float:
    ax = psi.axes[0]
    return (abs(mu) + abs(nu)) * max(abs(ax.min), abs(ax.max))


class GridCMTomogram:
    """Center-of-mass tomogram of a grid wavefunction, from its joint quadrature density."""

    def __init__(self, psi: GridWavefunction, points: int = 801):
        self.psi = psi
        self.n_modes = psi.modes
        self.points = points

    def value(self, X: float, mu, nu) -> float:
        mu, nu = _vec(mu, "mu"), _vec(nu, "nu")
        live = [j for j in range(self.n_modes) if mu[j] ** 2 + nu[j] ** 2 > 0]
        if not live:
            raise ValueError("degenerate query: sigma = |mu|^2 + |nu|^2 must be positive")
        if len(live) == 1:
            Y = np.zeros((1, self.n_modes))
            Y[0, live[0]] = X
            return float(symplectic_density(self.psi, mu, nu, Y)[0])
        r = max(abs(mu[0]) + abs(nu[0]), 1e-300) * max(abs(self.psi.axes[0].min), self.psi.axes[0].max)
        y = np.linspace(-r, r, self.points)
        wy = np.full(y.size, y[1] - y[0])
        wy[[0, -1]] *= 0.5
        Y = np.stack([y, X - y], axis=1)
        return float(symplectic_density(self.psi, mu, nu, Y) @ wy)

    def __call__(self, X, mu, nu) -> np.ndarray:
        mu, nu = np.asarray(mu, float), np.asarray(nu, float)
        shape = np.broadcast_shapes(np.shape(X), mu.shape[:-1], nu.shape[:-1])
        Xb = np.broadcast_to(X, shape).ravel()
        mb = np.broadcast_to(mu, shape + (self.n_modes,)).reshape(-1, self.n_modes)
        nb = np.broadcast_to(nu, shape + (self.n_modes,)).reshape(-1, self.n_modes)
        return np.array([self.value(x, m, n) for x, m, n in zip(Xb, mb, nb)]).reshape(shape)


# --------------------------------------------------------------------------
# conversions between schemes


def cm_from_symplectic(ws: Callable, q: TomographicQuery, points: int = quad.Y_POINTS) -> float:
    """w_cm(X) = int ws(Y, mu, nu) delta(X - sum_j Y_j) dY for N in {1, 2}."""
    n = q.n_modes
    if n == 1:
        return float(np.real(ws(np.array([[q.X]]), q.mu, q.nu)[0]))
    if n != 2:
        raise NotImplementedError("cm_from_symplectic supports one or two modes")
    s = np.sqrt(q.mu**2 + q.nu**2)
    if np.any(s == 0):
        raise ValueError("the symplectic route needs a nonzero direction in every mode")
    y = s[0] * np.linspace(-quad.Y_HALF, quad.Y_HALF, points)
    wy = np.full(y.size, y[1] - y[0])
    wy[[0, -1]] *= 0.5
    Y = np.stack([y, q.X - y], axis=1)
    return float(np.real(ws(Y, q.mu, q.nu)) @ wy)


def symplectic_from_cm(wcm: Callable, q: SymplecticQuery, regulators=quad.REGULATORS, k_points: int = 161) -> float:
    """ws(X) = (2 pi)^-N int dk exp(-i k.X) chi_cm(k o mu, k o nu), regulated in k."""
    n = q.n_modes
    if n == 1:
        chi = lambda m, v: quad.characteristic_from_tomogram(wcm, m, v)
        return float(quad.tomogram_from_characteristic(chi, q.X[0], q.mu, q.nu, regulators, hermitian=True))
    if n != 2:
        raise NotImplementedError("symplectic_from_cm supports one or two modes")
    s = np.sqrt(q.mu**2 + q.nu**2)
    u = np.linspace(-quad.K_HALF, quad.K_HALF, k_points)
    wu = np.full(u.size, u[1] - u[0])
    wu[[0, -1]] *= 0.5
    k1, k2 = np.meshgrid(u / s[0], u / s[1], indexing="ij")
    kk = np.stack([k1, k2], axis=-1)
    chi = quad.characteristic_from_tomogram(wcm, kk * q.mu, kk * q.nu)
    base = chi * np.exp(-1j * (k1 * q.X[0] + k2 * q.X[1])) * np.outer(wu, wu) / (s[0] * s[1] * (2 * np.pi) ** 2)
    r2 = k1**2 * s[0] ** 2 + k2**2 * s[1] ** 2
    vals = [np.sum(base * np.exp(-e * r2)) for e in regulators]
    return float(np.real(quad.richardson(regulators, vals) if len(vals) > 1 else vals[0]))


def cluster_tomogram(psi: GridWavefunction, part: ClusterPartition, q: ClusterQuery) -> float:
    """Cluster tomogram of a two-mode grid wavefunction for partitions (2) and (1, 1)."""
    if psi.modes != 2 or part.n_modes != 2:
        raise NotImplementedError("cluster tomograms are implemented for two-mode grid states")
    if part.sizes == (2,):
        return GridCMTomogram(psi).value(q.X[0], q.mu, q.nu)
    if part.sizes == (1, 1):
        return float(symplectic_density(psi, q.mu, q.nu, q.X[None, :])[0])
    raise NotImplementedError(f"partition {part.sizes} is not supported")


def subsystem_from_cluster(psi: GridWavefunction, m: int, q: TomographicQuery, other=(1.0, 0.0), points: int = 801) -> float:
    """Subsystem tomogram by integrating the (1, 1) cluster tomogram over the other X."""
    if psi.modes != 2 or m not in (0, 1) or q.n_modes != 1:
        raise ValueError("needs a two-mode state, m in {0, 1} and a single-mode query")
    mu = np.zeros(2)
    nu = np.zeros(2)
    mu[m], nu[m] = q.mu[0], q.nu[0]
    mu[1 - m], nu[1 - m] = other
    r = _support_half_width(psi, *other)
    y = np.linspace(-r, r, points)
    wy = np.full(y.size, y[1] - y[0])
    wy[[0, -1]] *= 0.5
    Y = np.empty((points, 2))
    Y[:, m] = q.X
    Y[:, 1 - m] = y
    return float(symplectic_density(psi, mu, nu, Y) @ wy)


def _padded(part: ClusterPartition, m: int, mu, nu):
    sl = part.slices()[m]
    a = np.zeros(part.n_modes)
    b = np.zeros(part.n_modes)
    a[sl], b[sl] = mu, nu
    return a, b


def subsystem_cm_tomogram(wcm: Callable, m: int, part: ClusterPartition, q: TomographicQuery, regulators=quad.REGULATORS) -> float:
    """Tomogram of subsystem ``m`` (0-based): (2 pi)^-1 int dk dY wcm(Y, k a, k b) e^{i(Y - kX)}.

    ``a`` and ``b`` pad the subsystem direction with zeros on the other modes.
    """
    if not 0 <= m < part.r:
        raise ValueError(f"subsystem index {m} out of range for {part.r} subsystems")
    if q.n_modes != part.sizes[m]:
        raise ValueError("query length does not match the subsystem size")
    a, b = _padded(part, m, q.mu, q.nu)
    chi = lambda mu, nu: quad.characteristic_from_tomogram(wcm, mu, nu)
    return float(quad.tomogram_from_characteristic(chi, q.X, a, b, regulators, hermitian=True))

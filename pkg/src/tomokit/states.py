"""Analytic coherent and cat states, their grid discretization and partial traces.

Units: hbar = 1 with mass- and frequency-scaled quadratures, so a coherent state
with amplitude alpha has <q> = sqrt(2) Re alpha and <p> = sqrt(2) Im alpha.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import GridCoverageError, InvalidStateError
from .grids import Grid1D
from .tolerances import DEFAULT, Tolerances


def _as_alphas(alphas) -> tuple[complex, ...]:
    arr = np.atleast_1d(np.asarray(alphas, dtype=complex))
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidStateError("amplitudes must be a non-empty vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("amplitudes must be finite")
    return tuple(complex(a) for a in arr)


@dataclass(frozen=True)
class CoherentState:
    alphas: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", _as_alphas(self.alphas))

    @property
    def n_modes(self) -> int:
        return len(self.alphas)

    @property
    def alpha(self) -> np.ndarray:
        return np.array(self.alphas, dtype=complex)

    @classmethod
    def vacuum(cls, n_modes: int = 1) -> "CoherentState":
        return cls((0.0,) * n_modes)


@dataclass(frozen=True)
class CatState:
    """Even (parity +1) or odd (parity -1) superposition of |alpha> and |-alpha>."""

    alphas: tuple[complex, ...]
    parity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alphas", _as_alphas(self.alphas))
        if self.parity not in (1, -1):
            raise InvalidStateError(f"parity must be +1 or -1, got {self.parity}")
        object.__setattr__(self, "parity", int(self.parity))
        if self.parity == -1 and all(a == 0 for a in self.alphas):
            raise InvalidStateError("odd cat with all amplitudes zero is the zero vector")

    @property
    def n_modes(self) -> int:
        return len(self.alphas)

    @property
    def alpha(self) -> np.ndarray:
        return np.array(self.alphas, dtype=complex)


State = Union[CoherentState, CatState]


def cat_normalization(alphas, parity: int) -> float:
    """Normalization N with N^-2 = 2 + 2 parity exp(-2 sum |alpha_j|^2)."""
    st = CatState(alphas, parity)
    n2 = float(np.sum(np.abs(st.alpha) ** 2))
    # expm1 keeps the odd cat accurate for tiny amplitudes
    denom = 4.0 + 2.0 * np.expm1(-2 * n2) if parity == 1 else -2.0 * np.expm1(-2 * n2)
    return float(denom ** -0.5)


def _check_dim(x: np.ndarray, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != n:
        raise ValueError(f"position vector must have last dimension {n}, got shape {x.shape}")
    return x


def _coherent(alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
    n = alpha.size
    expo = (
        -0.5 * np.sum(x * x, axis=-1)
        + np.sqrt(2.0) * (x @ alpha)
        - 0.5 * np.sum(np.abs(alpha) ** 2)
        - 0.5 * np.sum(alpha * alpha)
    )
    return np.pi ** (-n / 4) * np.exp(expo)


def coherent_wavefunction(state: CoherentState, x) -> np.ndarray | complex:
    """psi_alpha(x) for x of shape (..., N)."""
    x = _check_dim(x, state.n_modes)
    out = _coherent(state.alpha, x)
    return complex(out) if out.ndim == 0 else out


def cat_wavefunction(state: CatState, x) -> np.ndarray | complex:
    x = _check_dim(x, state.n_modes)
    a = state.alpha
    norm = cat_normalization(state.alphas, state.parity)
    out = norm * (_coherent(a, x) + state.parity * _coherent(-a, x))
    return complex(out) if out.ndim == 0 else out


def wavefunction(state: State, x):
    if isinstance(state, CatState):
        return cat_wavefunction(state, x)
    if isinstance(state, CoherentState):
        return coherent_wavefunction(state, x)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def default_axis(state: State, points: int = 128, margin: float = 6.0) -> Grid1D:
    """Symmetric axis spanning +-(sqrt 2 max|alpha_j| + margin), shared by all modes."""
    half = np.sqrt(2.0) * float(np.max(np.abs(state.alpha))) + margin
    return Grid1D.symmetric(half, points)


@dataclass(frozen=True, eq=False)
class GridWavefunction:
    axes: tuple[Grid1D, ...]
    samples: np.ndarray

    def __post_init__(self):
        axes = tuple(self.axes)
        if not 1 <= len(axes) <= 2:
            raise ValueError("grid wavefunctions support one or two modes")
        samples = np.asarray(self.samples, dtype=complex)
        shape = tuple(a.points for a in axes)
        if samples.shape != shape:
            raise ValueError(f"samples shape {samples.shape} does not match axes {shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "samples", samples)

    @property
    def modes(self) -> int:
        return len(self.axes)

    def norm(self) -> float:
        """Trapezoid quadrature of |psi|^2."""
        dens = np.abs(self.samples) ** 2
        for ax in reversed(self.axes):
            dens = dens @ ax.weights
        return float(dens)

    def momentum_samples(self, mode: int, p: np.ndarray) -> np.ndarray:
        """Momentum amplitude along ``mode`` at momenta ``p``, other modes in position form."""
        ax = self.axes[mode]
        kern = np.exp(-1j * np.outer(p, ax.nodes)) * ax.weights / np.sqrt(2 * np.pi)
        moved = np.moveaxis(self.samples, mode, 0)
        out = np.tensordot(kern, moved, axes=(1, 0))
        return np.moveaxis(out, 0, mode)

    def quadrature_means(self) -> tuple[np.ndarray, np.ndarray]:
        """(<q_j>, <p_j>) by quadrature; momenta use the discrete Fourier transform."""
        n = self.norm()
        qs, ps = [], []
        for j, ax in enumerate(self.axes):
            dens = np.abs(self.samples) ** 2
            dens = np.moveaxis(dens, j, -1)
            qdens = dens @ (ax.weights * ax.nodes)
            for other in (a for i, a in enumerate(self.axes) if i != j):
                qdens = qdens @ other.weights
            qs.append(float(qdens) / n)
            pax = Grid1D.symmetric(np.pi / ax.spacing, 2 * ax.points + 1)
            phi = self.momentum_samples(j, pax.nodes)
            pd = np.moveaxis(np.abs(phi) ** 2, j, -1) @ (pax.weights * pax.nodes)
            for other in (a for i, a in enumerate(self.axes) if i != j):
                pd = pd @ other.weights
            ps.append(float(pd) / n)
        return np.array(qs), np.array(ps)


@dataclass(frozen=True, eq=False)
class GridDensityMatrix:
    """Kernel rho(x, x') on a single-mode axis.

    ``is_identity`` marks the identity operator, which is carried analytically;
    its samples hold the discretized delta diag(1/dx) only as a fallback.
    """

    axis: Grid1D
    samples: np.ndarray
    is_identity: bool = field(default=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.axis.points, self.axis.points):
            raise ValueError(f"density matrix shape {s.shape} does not match axis")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def identity(cls, axis: Grid1D) -> "GridDensityMatrix":
        return cls(axis, np.eye(axis.points) / axis.spacing, is_identity=True)

    @classmethod
    def from_wavefunction(cls, psi: GridWavefunction) -> "GridDensityMatrix":
        if psi.modes != 1:
            raise ValueError("projector needs a single-mode wavefunction")
        v = psi.samples
        return cls(psi.axes[0], np.outer(v, v.conj()))

    @classmethod
    def from_function(cls, axis: Grid1D, f) -> "GridDensityMatrix":
        x = axis.nodes
        return cls(axis, f(x[:, None], x[None, :]))

    def trace(self) -> complex:
        if self.is_identity:
            return complex(np.inf)
        return complex(np.sum(np.diag(self.samples) * self.axis.weights))

    def matmul(self, other: "GridDensityMatrix") -> "GridDensityMatrix":
        """Operator product with quadrature weights on the contracted index."""
        if other.axis != self.axis:
            raise ValueError("axis mismatch")
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        return GridDensityMatrix(self.axis, (self.samples * self.axis.weights) @ other.samples)

    def adjoint(self) -> "GridDensityMatrix":
        return GridDensityMatrix(self.axis, self.samples.conj().T, self.is_identity)

    def purity(self) -> float:
        w = self.axis.weights
        return float(np.real(np.sum(np.abs(self.samples) ** 2 * np.outer(w, w))))

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.samples - self.samples.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        """Spectrum of the operator, using symmetric quadrature weighting."""
        r = np.sqrt(self.axis.weights)
        m = r[:, None] * self.samples * r[None, :]
        return np.linalg.eigvalsh(0.5 * (m + m.conj().T))

    def frobenius_distance(self, other: "GridDensityMatrix") -> float:
        """Hilbert-Schmidt norm of the difference."""
        if other.axis != self.axis:
            raise ValueError("axis mismatch")
        w = self.axis.weights
        d = np.abs(self.samples - other.samples) ** 2
        return float(np.sqrt(np.sum(d * np.outer(w, w))))

    def expectation(self, psi: GridWavefunction) -> float:
        """<psi|rho|psi> by quadrature."""
        v = psi.samples * self.axis.weights
        return float(np.real(v.conj() @ self.samples @ v))

    def check(self, tol: Tolerances = DEFAULT) -> None:
        """Raise ``InvalidStateError`` when the density-matrix invariants fail."""
        if self.hermiticity_residual() > tol.herm * max(1.0, float(np.max(np.abs(self.samples)))):
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(self.trace() - 1) > tol.tr:
            raise InvalidStateError(f"trace {self.trace()} differs from 1")
        if self.eigenvalues().min() < -tol.psd:
            raise InvalidStateError("density matrix has negative eigenvalues")

    def characteristic(self, mu, nu) -> np.ndarray:
        """Tr[A exp(-i(mu q + nu p))], vectorized over ``mu`` and ``nu``.

        Uses (e^{-i(a q + b p)} psi)(x) = e^{iab/2} e^{-iax} psi(x - b), so the trace
        integrates the shifted diagonal A(x - b, x); off-node values come from a
        quintic spline.
        """
        from scipy.interpolate import RectBivariateSpline

        mu, nu = np.broadcast_arrays(np.asarray(mu, float), np.asarray(nu, float))
        if self.is_identity:
            raise ValueError("the identity characteristic function is a delta distribution")
        x = self.axis.nodes
        w = self.axis.weights
        re = RectBivariateSpline(x, x, self.samples.real, kx=5, ky=5)
        im = RectBivariateSpline(x, x, self.samples.imag, kx=5, ky=5)
        out = np.empty(mu.shape, dtype=complex)
        for idx in np.ndindex(mu.shape):
            a, b = mu[idx], nu[idx]
            xs = x - b
            inside = (xs >= x[0]) & (xs <= x[-1])
            diag = np.zeros(x.size, dtype=complex)
            if np.any(inside):
                diag[inside] = re.ev(xs[inside], x[inside]) + 1j * im.ev(xs[inside], x[inside])
            out[idx] = np.exp(0.5j * a * b) * np.sum(w * np.exp(-1j * a * x) * diag)
        return out


def discretize(state: State, axes: Sequence[Grid1D] | None = None, tol: Tolerances = DEFAULT) -> GridWavefunction:
    """Sample ``state`` on a tensor grid and verify its quadrature norm."""
    if state.n_modes > 2:
        raise ValueError("discretized states support at most two modes")
    if axes is None:
        axes = (default_axis(state),) * state.n_modes
    axes = tuple(axes)
    if len(axes) != state.n_modes:
        raise ValueError(f"need {state.n_modes} axes, got {len(axes)}")
    mesh = np.meshgrid(*[a.nodes for a in axes], indexing="ij")
    x = np.stack(mesh, axis=-1)
    psi = GridWavefunction(axes, wavefunction(state, x))
    deficit = abs(psi.norm() - 1.0)
    if deficit > tol.norm:
        raise GridCoverageError(f"grid quadrature norm misses 1 by {deficit:.3e} (> {tol.norm:g})")
    return psi


def reduce_to_mode(psi: GridWavefunction, keep: int = 0) -> GridDensityMatrix:
    """Reduced density matrix of mode ``keep`` (0-based), tracing out the other mode."""
    if psi.modes != 2:
        raise ValueError("partial trace needs a two-mode wavefunction")
    if keep not in (0, 1):
        raise ValueError("keep must be 0 or 1")
    m = psi.samples if keep == 0 else psi.samples.T
    traced = psi.axes[1 - keep]
    rho = (m * traced.weights) @ m.conj().T
    return GridDensityMatrix(psi.axes[keep], rho)

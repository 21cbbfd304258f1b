"""Wigner functions, Weyl symbols and the Groenewold star product on grids.

Conventions: w_A(q, p) = int exp(-i p u) A(q + u/2, q - u/2) du, so the Wigner
function of a normalized state integrates to (2 pi)^N over phase space and the
vacuum has W = 2 exp(-q^2 - p^2).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .grids import Grid1D
from .states import GridDensityMatrix, GridWavefunction
from .tolerances import DEFAULT, Tolerances


class NyquistWarning(UserWarning):
    """Momentum grid extends beyond the band resolved by the position spacing."""


@dataclass(frozen=True)
class PhaseSpaceGrid:
    position: tuple[Grid1D, ...]
    momentum: tuple[Grid1D, ...]

    def __post_init__(self):
        pos, mom = tuple(self.position), tuple(self.momentum)
        if len(pos) != len(mom) or not pos:
            raise ValueError("need one position and one momentum grid per mode")
        object.__setattr__(self, "position", pos)
        object.__setattr__(self, "momentum", mom)

    @property
    def n_modes(self) -> int:
        return len(self.position)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(g.points for g in self.position) + tuple(g.points for g in self.momentum)

    @classmethod
    def for_axes(cls, axes, stride: int = 1, p_points: int | None = None, p_max: float | None = None) -> "PhaseSpaceGrid":
        """Grid whose position nodes are every ``stride``-th half-node of the axes.

        ``stride=1`` doubles the resolution (all midpoints), ``stride=2`` reuses the
        axis nodes, ``stride=4`` keeps every other axis node. Momentum defaults to the
        same half-width as the axis.
        """
        pos, mom = [], []
        for ax in axes:
            n_half = 2 * ax.points - 1
            if (n_half - 1) % stride:
                raise ValueError(f"stride {stride} does not tile an axis with {ax.points} points")
            q = Grid1D(ax.min, ax.max, (n_half - 1) // stride + 1)
            half = p_max if p_max is not None else 0.5 * (ax.max - ax.min)
            mom.append(Grid1D.symmetric(half, p_points or q.points))
            pos.append(q)
        return cls(tuple(pos), tuple(mom))

    def weights(self) -> np.ndarray:
        w = np.ones(())
        for g in self.position + self.momentum:
            w = np.multiply.outer(w, g.weights)
        return w


@dataclass(frozen=True, eq=False)
class WignerGrid:
    grid: PhaseSpaceGrid
    samples: np.ndarray
    imag_residual: float = 0.0

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.shape != self.grid.shape:
            raise ValueError(f"samples shape {s.shape} does not match grid {self.grid.shape}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def normalization(self) -> float:
        """int W dq dp / (2 pi)^N."""
        return float(np.sum(self.samples * self.grid.weights()) / (2 * np.pi) ** self.grid.n_modes)

    def argmax(self) -> tuple[float, ...]:
        idx = np.unravel_index(np.argmax(self.samples), self.samples.shape)
        axes = self.grid.position + self.grid.momentum
        return tuple(float(g.nodes[i]) for g, i in zip(axes, idx))


@dataclass(frozen=True, eq=False)
class WeylSymbolGrid:
    grid: PhaseSpaceGrid
    samples: np.ndarray
    is_identity: bool = field(default=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != self.grid.shape:
            raise ValueError(f"samples shape {s.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("Weyl symbol samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def identity(cls, grid: PhaseSpaceGrid) -> "WeylSymbolGrid":
        return cls(grid, np.ones(grid.shape), is_identity=True)

    @classmethod
    def from_function(cls, grid: PhaseSpaceGrid, f) -> "WeylSymbolGrid":
        if grid.n_modes != 1:
            raise ValueError("from_function builds single-mode symbols")
        q, p = grid.position[0].nodes, grid.momentum[0].nodes
        q, p = np.broadcast_arrays(q[:, None], p[None, :])
        return cls(grid, f(q, p))

    def __sub__(self, other: "WeylSymbolGrid") -> "WeylSymbolGrid":
        _same_grid(self, other)
        return WeylSymbolGrid(self.grid, self.samples - other.samples)

    def max_abs_diff(self, other: "WeylSymbolGrid") -> float:
        _same_grid(self, other)
        return float(np.max(np.abs(self.samples - other.samples)))


def _same_grid(a, b) -> None:
    if a.grid != b.grid:
        raise ValueError("symbols live on different phase-space grids")


def _nyquist_check(axis: Grid1D, momentum: Grid1D) -> None:
    # the u-quadrature samples at spacing 2 dx, so W is periodic in p with period pi/dx
    limit = np.pi / (2 * axis.spacing)
    if max(abs(momentum.min), abs(momentum.max)) > limit:
        warnings.warn(
            f"momentum grid reaches {max(abs(momentum.min), abs(momentum.max)):.3g}, beyond the "
            f"resolvable band {limit:.3g} of position spacing {axis.spacing:.3g}",
            NyquistWarning,
            stacklevel=3,
        )


def _half_indices(axis: Grid1D, q: Grid1D) -> np.ndarray | None:
    """Indices s with q = axis.min + s dx / 2, or None if q is off the half-grid."""
    return axis.half_grid().node_indices(q.nodes)


def _pair_matrix(kernel: np.ndarray, s_idx: np.ndarray) -> np.ndarray:
    """R[i, d + n - 1] = K[(s_i + d)/2, (s_i - d)/2] for admissible d, else 0."""
    n = kernel.shape[0]
    d = np.arange(-(n - 1), n)
    a = (s_idx[:, None] + d[None, :])
    b = (s_idx[:, None] - d[None, :])
    ok = (a % 2 == 0) & (a >= 0) & (b >= 0) & (a // 2 < n) & (b // 2 < n)
    out = np.zeros((s_idx.size, d.size), dtype=complex)
    out[ok] = kernel[(a // 2)[ok], (b // 2)[ok]]
    return out


def _symbol_1mode(kernel: np.ndarray, axis: Grid1D, q: Grid1D, p: Grid1D) -> np.ndarray:
    h = axis.spacing
    n = axis.points
    s_idx = _half_indices(axis, q)
    d = np.arange(-(n - 1), n)
    if s_idx is not None:
        r = _pair_matrix(kernel, s_idx)
        # admissible d share the parity of s, so neighbours sit 2h apart
        e = 2 * h * np.exp(-1j * np.outer(d * h, p.nodes))
        return r @ e
    # off the half-grid: bilinear interpolation of the kernel along u
    from scipy.interpolate import RegularGridInterpolator

    x = axis.nodes
    interp_re = RegularGridInterpolator((x, x), kernel.real, bounds_error=False, fill_value=0.0)
    interp_im = RegularGridInterpolator((x, x), kernel.imag, bounds_error=False, fill_value=0.0)
    u = d * h
    pts = np.stack(np.broadcast_arrays(q.nodes[:, None] + u / 2, q.nodes[:, None] - u / 2), axis=-1)
    vals = interp_re(pts) + 1j * interp_im(pts)
    return vals @ (h * np.exp(-1j * np.outer(u, p.nodes)))


def weyl_symbol(a: GridDensityMatrix, grid: PhaseSpaceGrid) -> WeylSymbolGrid:
    """Weyl symbol of a single-mode kernel on ``grid``."""
    if grid.n_modes != 1:
        raise ValueError("weyl_symbol supports single-mode kernels")
    if a.is_identity:
        return WeylSymbolGrid.identity(grid)
    q, p = grid.position[0], grid.momentum[0]
    if q.min < a.axis.min - 1e-12 or q.max > a.axis.max + 1e-12:
        raise ValueError("phase-space grid extends beyond the kernel axis")
    _nyquist_check(a.axis, p)
    return WeylSymbolGrid(grid, _symbol_1mode(a.samples, a.axis, q, p))


def wigner_from_wavefunction(psi: GridWavefunction, grid: PhaseSpaceGrid | None = None) -> WignerGrid:
    """Wigner function of a one- or two-mode grid wavefunction."""
    if grid is None:
        grid = PhaseSpaceGrid.for_axes(psi.axes, stride=2)
    if grid.n_modes != psi.modes:
        raise ValueError("grid and wavefunction disagree on the number of modes")
    for ax, p in zip(psi.axes, grid.momentum):
        _nyquist_check(ax, p)
    if psi.modes == 1:
        rho = np.outer(psi.samples, psi.samples.conj())
        w = _symbol_1mode(rho, psi.axes[0], grid.position[0], grid.momentum[0])
    else:
        w = _wigner_two_modes(psi, grid)
    resid = float(np.max(np.abs(w.imag)))
    return WignerGrid(grid, w.real, resid)


def _wigner_two_modes(psi: GridWavefunction, grid: PhaseSpaceGrid) -> np.ndarray:
    (ax1, ax2), (q1, q2), (p1, p2) = psi.axes, grid.position, grid.momentum
    s1, s2 = _half_indices(ax1, q1), _half_indices(ax2, q2)
    if s1 is None or s2 is None:
        raise ValueError("two-mode Wigner grids must sit on half-nodes of the wavefunction axes")
    psi_s = psi.samples
    n1, n2 = psi_s.shape
    out = np.empty(grid.shape, dtype=complex)
    h1, h2 = ax1.spacing, ax2.spacing
    for i, si in enumerate(s1):
        d1 = np.arange(-min(si, 2 * (n1 - 1) - si), min(si, 2 * (n1 - 1) - si) + 1, 2)
        a1, b1 = (si + d1) // 2, (si - d1) // 2
        e1 = 2 * h1 * np.exp(-1j * np.outer(p1.nodes, d1 * h1))
        for j, sj in enumerate(s2):
            d2 = np.arange(-min(sj, 2 * (n2 - 1) - sj), min(sj, 2 * (n2 - 1) - sj) + 1, 2)
            a2, b2 = (sj + d2) // 2, (sj - d2) // 2
            e2 = 2 * h2 * np.exp(-1j * np.outer(d2 * h2, p2.nodes))
            r = psi_s[np.ix_(a1, a2)] * np.conj(psi_s[np.ix_(b1, b2)])
            out[i, j] = e1 @ r @ e2
    return out


def operator_from_weyl(w: WeylSymbolGrid, axis: Grid1D) -> GridDensityMatrix:
    """Kernel A(x, x') = (2 pi)^-1 int w((x + x')/2, p) exp(i p (x - x')) dp."""
    if w.grid.n_modes != 1:
        raise ValueError("operator_from_weyl supports single-mode symbols")
    if w.is_identity:
        return GridDensityMatrix.identity(axis)
    q, p = w.grid.position[0], w.grid.momentum[0]
    n, h = axis.points, axis.spacing
    mids = axis.half_grid()
    idx = q.node_indices(mids.nodes)
    if idx is not None:
        wq = w.samples[idx]
    else:
        if mids.min < q.min - 1e-12 or mids.max > q.max + 1e-12:
            raise ValueError("symbol grid does not cover the requested axis")
        from scipy.interpolate import CubicSpline

        wq = CubicSpline(q.nodes, w.samples, axis=0)(mids.nodes)
    d = np.arange(-(n - 1), n)
    f = (wq * p.weights) @ np.exp(1j * np.outer(p.nodes, d * h)) / (2 * np.pi)
    a = np.arange(n)
    return GridDensityMatrix(axis, f[a[:, None] + a[None, :], a[:, None] - a[None, :] + n - 1])


def groenewold_star(wa: WeylSymbolGrid, wb: WeylSymbolGrid, tol: Tolerances = DEFAULT) -> WeylSymbolGrid:
    """Weyl symbol of the operator product AB from the symbols of A and B.

    The Groenewold integral over (q1, p1) is a Fourier transform of wA evaluated
    on the difference grids, which reduces the four-dimensional kernel integral to
    two nested quadratures.
    """
    _same_grid(wa, wb)
    if wa.grid.n_modes != 1:
        raise ValueError("the grid star product is implemented for one mode")
    if wa.is_identity:
        return wb
    if wb.is_identity:
        return wa
    grid = wa.grid
    q, p = grid.position[0], grid.momentum[0]
    for s in (wa, wb):
        edge = max(np.abs(s.samples[[0, -1], :]).max(), np.abs(s.samples[:, [0, -1]]).max())
        if edge > tol.edge * max(1.0, float(np.abs(s.samples).max())):
            warnings.warn(f"symbol does not decay at the grid edge ({edge:.2e})", RuntimeWarning, stacklevel=2)
    nq = q.points
    qn, pn = q.nodes, p.nodes
    # phase 2[p3(q2 - q1) + q3(p1 - p2) + q1 p2 - p1 q2] after substitution
    a_w = wa.samples * np.outer(q.weights, p.weights)
    b_w = wb.samples * np.outer(q.weights, p.weights)
    diffs = np.arange(-(nq - 1), nq) * q.spacing
    e = np.exp(2j * np.outer(pn, diffs))  # [p index, q-difference index]
    t_b = b_w @ e  # [c, (q_i - q_a)]
    t_a = a_w @ e  # [i, (q_a - q_c)]
    f = np.exp(2j * np.outer(qn, pn))  # [node, b]
    k = np.arange(nq)
    out = np.empty((nq, p.points), dtype=complex)
    for a_ in range(nq):
        m = t_b[k[None, :], k[:, None] - a_ + nq - 1] * t_a[k[:, None], a_ - k[None, :] + nq - 1]  # [i, c]
        out[a_] = np.sum(np.conj(f) * (m @ f), axis=0)
    return WeylSymbolGrid(grid, out / np.pi**2)

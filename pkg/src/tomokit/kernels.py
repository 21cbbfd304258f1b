"""Star-product kernels with delta constraints, and symbol-level contractions.

Kernel values that contain delta functions are returned as
``ConstrainedKernelValue``: a smooth prefactor, a positive Jacobian and the
linear constraints that must vanish. The deltas are removed analytically when a
kernel is contracted with symbols; nothing here smooths a delta numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import quad
from .errors import AccuracyError, SingularKernelError
from .tomography import (
    SymplecticQuery,
    TomographicQuery,
    cm_from_symplectic,
    dyad_cm_characteristic,
    dyad_cm_tomogram,
    symplectic_from_cm,
)

# --------------------------------------------------------------------------
# constrained kernel values


@dataclass(frozen=True, eq=False)
class LinearConstraint:
    """``coefficients . z + offset = 0`` inside a delta function."""

    coefficients: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if not np.any(c != 0):
            raise ValueError("a constraint needs at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "offset", float(self.offset))

    def residual(self, z) -> float:
        return float(self.coefficients @ np.asarray(z, dtype=float) + self.offset)


@dataclass(frozen=True, eq=False)
class ConstrainedKernelValue:
    prefactor: complex
    jacobian: float = 1.0
    constraints: tuple[LinearConstraint, ...] = ()
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.jacobian > 0:
            raise ValueError("jacobian must be positive")
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def resolved(self) -> bool:
        return not self.constraints

    @property
    def value(self) -> complex:
        """prefactor * jacobian; meaningful on its own only when fully resolved."""
        return complex(self.prefactor * self.jacobian)

    def residuals(self, z) -> np.ndarray:
        return np.array([c.residual(z) for c in self.constraints])

    def on_support(self, z, tol: float = 1e-9) -> bool:
        return bool(np.all(np.abs(self.residuals(z)) <= tol))

    def eliminated_weight(self, names: Sequence[str]) -> complex:
        """Weight left after integrating the deltas over the named variables."""
        if len(names) != len(self.constraints):
            raise ValueError("need one eliminated variable per constraint")
        cols = [self.variables.index(n) for n in names]
        c = np.array([[con.coefficients[j] for j in cols] for con in self.constraints])
        det = np.linalg.det(c)
        if abs(det) < 1e-300:
            raise SingularKernelError("constraints are degenerate in the chosen variables")
        return complex(self.prefactor * self.jacobian / abs(det))


def _triple(x, n: int | None = None):
    X, mu, nu = x
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    if mu.shape != nu.shape or (n is not None and mu.size != n):
        raise ValueError(f"each argument must be (X, mu, nu) with {n or 'matching'}-component vectors")
    return float(X), mu, nu


TWO_MODE_VARIABLES = (
    "mu1_1", "mu1_2", "nu1_1", "nu1_2",
    "mu2_1", "mu2_2", "nu2_1", "nu2_2",
)


def eval_cm_kernel_two_modes(x1, x2, x3) -> ConstrainedKernelValue:
    """Center-of-mass star-product kernel for two modes with k eliminated.

    The integration variables ``z`` are ordered as ``TWO_MODE_VARIABLES``
    (components of mu1, nu1, mu2, nu2; suffix = mode).
    """
    X1, m1, n1 = _triple(x1, 2)
    X2, m2, n2 = _triple(x2, 2)
    X3, m3, n3 = _triple(x3, 2)
    if np.any(m3 == 0) or np.any(n3 == 0):
        raise SingularKernelError("all components of mu3 and nu3 must be nonzero")
    t = (n1[1] + n2[1]) / n3[1]
    ph = n1 @ m2 - m1 @ n2
    pref = np.exp(1j * (X1 + X2) - 1j * X3 * t + 0.5j * ph) / (2 * np.pi) ** 3
    jac = 1.0 / abs(n3[0] * n3[1] * m3[0] * m3[1])

    def row(mu_mode: int | None, nu_mode: int | None):
        c = np.zeros(8)
        if mu_mode is not None:
            c[mu_mode] = c[4 + mu_mode] = 1.0 / m3[mu_mode]
        else:
            c[2] = c[6] = 1.0 / n3[0]
        c[3] -= 1.0 / n3[1]
        c[7] -= 1.0 / n3[1]
        return LinearConstraint(c)

    cons = (row(0, None), row(1, None), row(None, 0))
    return ConstrainedKernelValue(complex(pref), jac, cons, TWO_MODE_VARIABLES)


def eval_groenewold_kernel(p1, p2, p3) -> complex:
    """pi^-2N exp 2i(q1 p2 - q2 p1 + q2 p3 - q3 p2 + q3 p1 - q1 p3) for points (q, p)."""
    (q1, pp1), (q2, pp2), (q3, pp3) = [
        (np.atleast_1d(np.asarray(q, float)), np.atleast_1d(np.asarray(p, float))) for q, p in (p1, p2, p3)
    ]
    n = q1.size
    ph = q1 @ pp2 - q2 @ pp1 + q2 @ pp3 - q3 @ pp2 + q3 @ pp1 - q1 @ pp3
    return complex(np.pi ** (-2 * n) * np.exp(2j * ph))


# --------------------------------------------------------------------------
# regulated Groenewold route to the two-mode cm kernel


def _groenewold_quadratic_form() -> np.ndarray:
    """Q with z^T Q z equal to the Groenewold phase for one mode.

    Slots: q1, p1, q2, p2, q3, p3.
    """
    q = np.zeros((6, 6))
    for a, b, c in [(0, 3, 1), (2, 1, -1), (2, 5, 1), (4, 3, -1), (4, 1, 1), (0, 5, -1)]:
        q[a, b] += c
        q[b, a] += c
    return q


def _sqrt_det(a: np.ndarray) -> complex:
    # principal branch per eigenvalue; all eigenvalues have positive real part
    return complex(np.prod(np.sqrt(np.linalg.eigvals(a))))


# eliminated variables mu2 (both modes) and nu2 of mode 1, i.e. Z slots q2^(1), q2^(2), p2^(1)
_FREE_SLOTS = (2, 8, 3)
_ELIMINATED = ("mu2_1", "mu2_2", "nu2_1")


def _groenewold_weight(x1, x2, x3, eps: float, hbar: float) -> complex:
    X1, m1, n1 = x1
    X2, m2, n2 = x2
    X3, m3, n3 = x3
    nm = 2
    q = np.zeros((6 * nm, 6 * nm))
    for j in range(nm):
        q[6 * j:6 * j + 6, 6 * j:6 * j + 6] = _groenewold_quadratic_form() / hbar
    lin = np.zeros(6 * nm)
    c = np.zeros(6 * nm)
    for j in range(nm):
        lin[6 * j:6 * j + 4] = (m1[j], n1[j], m2[j], n2[j])
        c[6 * j + 4:6 * j + 6] = (m3[j], n3[j])
    rem = [i for i in range(6 * nm) if i not in _FREE_SLOTS]
    a = eps * np.eye(len(rem)) - 1j * q[np.ix_(rem, rem)]
    ai = np.linalg.inv(a)
    lr, cr = lin[rem], c[rem]
    al, be, ga = cr @ ai @ cr, cr @ ai @ lr, lr @ ai @ lr
    val = (2 * np.pi) ** (-3 * nm) * np.exp(1j * (X1 + X2)) * (np.pi * hbar) ** (-2 * nm)
    val *= (2 * np.pi) ** len(_FREE_SLOTS)  # free integrations give 2 pi delta(z_slot)
    val *= np.pi ** (len(rem) / 2) / _sqrt_det(a)
    val *= np.sqrt(4 * np.pi / al) / (2 * np.pi) * np.exp(-ga / 4 + (1j * X3 - be / 2) ** 2 / al)
    return complex(val)


def cm_kernel_from_groenewold(x1, x2, x3, regulators=(1e-1, 1e-2, 1e-3), hbar: float = 1.0) -> complex:
    """Two-mode cm kernel from the Groenewold kernel, integrated over mu2 and nu2^(1).

    The twelve-dimensional phase-space integral is regulated by
    exp(-eps |z|^2), reduced to Gaussian integrals in closed form and
    Richardson-extrapolated to eps = 0. The result is the weight that
    ``eval_cm_kernel_two_modes(...).eliminated_weight(("mu2_1", "mu2_2", "nu2_1"))``
    assigns to the same on-support arguments. ``hbar < 1`` rescales the kernel
    phase; as hbar -> 0 the weight tends to that of the phase-free kernel.
    """
    args = [_triple(x, 2) for x in (x1, x2, x3)]
    vals = [_groenewold_weight(*args, e, hbar) for e in regulators]
    out = quad.richardson(regulators, vals) if len(vals) > 1 else vals[0]
    if not np.isfinite(out):
        raise AccuracyError("regulated Groenewold integral did not converge")
    return complex(out)


def cm_two_mode_weight(x1, x2, x3, phase: bool = True) -> complex:
    """Eliminated-delta weight of ``eval_cm_kernel_two_modes``; ``phase=False`` drops the symplectic term."""
    kv = eval_cm_kernel_two_modes(x1, x2, x3)
    w = kv.eliminated_weight(_ELIMINATED)
    if not phase:
        _, m1, n1 = _triple(x1, 2)
        _, m2, n2 = _triple(x2, 2)
        w *= np.exp(-0.5j * (n1 @ m2 - m1 @ n2))
    return complex(w)


# --------------------------------------------------------------------------
# center-of-mass symbols and their star product


@dataclass(frozen=True)
class ConvolutionGrid:
    """Trapezoid grid for the 2N-dimensional (mu1, nu1) integral of a star product."""

    half_width: float
    spacing: float

    def nodes(self, n_modes: int):
        n = 2 * int(round(self.half_width / self.spacing)) + 1
        x = np.linspace(-self.half_width, self.half_width, n)
        w = np.full(n, x[1] - x[0])
        w[[0, -1]] *= 0.5
        mesh = np.meshgrid(*([x] * (2 * n_modes)), indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        wt = np.ones(())
        for _ in range(2 * n_modes):
            wt = np.multiply.outer(wt, w)
        return pts[:, :n_modes], pts[:, n_modes:], wt.ravel()


DEFAULT_CONV = {1: ConvolutionGrid(10.0, 0.25), 2: ConvolutionGrid(7.2, 0.6)}


class CMSymbol:
    """Center-of-mass symbol f(X, mu, nu) = Tr[A delta(X - mu.q - nu.p)].

    Symbols are represented through their characteristic function
    ``chi(mu, nu) = int f e^{iX} dX = Tr[A exp(i(mu.q + nu.p))]``; tomogram
    values follow by Fourier inversion along the ray. The identity operator is
    a flag, since its characteristic function is (2 pi)^N delta(mu) delta(nu).
    """

    def __init__(self, n_modes: int, characteristic: Callable | None = None, tomogram: Callable | None = None,
                 identity: bool = False, tag: str = "", k_points: int | None = None):
        if not identity and characteristic is None:
            raise ValueError("a non-identity symbol needs a characteristic function")
        self.n_modes = n_modes
        self._chi = characteristic
        self._tomogram = tomogram
        self.identity = identity
        self.tag = tag
        self.k_points = k_points or (quad.K_POINTS if n_modes == 1 else 161)
        self._cache: dict = {}

    @classmethod
    def identity_symbol(cls, n_modes: int = 1) -> "CMSymbol":
        return cls(n_modes, identity=True, tag="identity")

    @classmethod
    def dyad(cls, alpha, beta) -> "CMSymbol":
        """Symbol of |alpha><beta| for coherent amplitudes."""
        a = np.atleast_1d(np.asarray(alpha, complex))
        b = np.atleast_1d(np.asarray(beta, complex))
        return cls(a.size, lambda m, v: dyad_cm_characteristic(a, b, m, v),
                   lambda X, m, v: dyad_cm_tomogram(a, b, X, m, v), tag=f"dyad{tuple(a)}{tuple(b)}")

    @classmethod
    def from_tomogram(cls, w: Callable, n_modes: int, tag: str = "") -> "CMSymbol":
        return cls(n_modes, lambda m, v: quad.characteristic_from_tomogram(w, m, v), w, tag=tag)

    def characteristic(self, mu, nu) -> np.ndarray:
        if self.identity:
            raise ValueError("the identity symbol has a distributional characteristic function")
        return self._chi(np.asarray(mu, float), np.asarray(nu, float))

    def characteristic_table(self, conv: ConvolutionGrid) -> np.ndarray:
        if conv not in self._cache:
            m, v, _ = conv.nodes(self.n_modes)
            self._cache[conv] = self.characteristic(m, v)
        return self._cache[conv]

    @property
    def composite(self) -> bool:
        return self._tomogram is None and not self.identity

    def __call__(self, X, mu, nu, regulators=quad.REGULATORS) -> np.ndarray:
        if self.identity:
            raise ValueError("the identity symbol is not a function of (X, mu, nu)")
        if self._tomogram is not None:
            return self._tomogram(X, np.asarray(mu, float), np.asarray(nu, float))
        k_half = quad.K_HALF
        s, um, un = quad.split_direction(mu, nu)
        if np.any(s == 0):
            raise ValueError("tomographic query needs (mu, nu) != (0, 0)")
        y = np.asarray(X, dtype=float) / s

        def ray(k):
            return self.characteristic(k[:, None] * um[..., None, :], k[:, None] * un[..., None, :])

        return quad.ray_inverse(ray, y, regulators, k_half, self.k_points) / s


def _twisted(fa: CMSymbol, fb: CMSymbol, mu: np.ndarray, nu: np.ndarray, phase: bool, conv: ConvolutionGrid):
    """(2 pi)^-N int dy exp(-(i/2)(y_mu.nu - y_nu.mu)) chi_A(y) chi_B(m - y).

    The factor that is expensive to evaluate sits on the fixed grid.
    """
    n = fa.n_modes
    gm, gn, gw = conv.nodes(n)
    lead = mu.shape[:-1]
    mu_f = mu.reshape(-1, n)
    nu_f = nu.reshape(-1, n)
    out = np.empty(mu_f.shape[0], dtype=complex)
    on_grid_b = fb.composite and not fa.composite
    table = (fb if on_grid_b else fa).characteristic_table(conv)
    other = fa if on_grid_b else fb
    for i, (m, v) in enumerate(zip(mu_f, nu_f)):
        vals = other.characteristic(m - gm, v - gn)
        if phase:
            if on_grid_b:
                # substitute y = m - z with z on the grid
                ph = np.exp(0.5j * (gm @ v - gn @ m))
            else:
                ph = np.exp(-0.5j * (gm @ v - gn @ m))
            vals = vals * ph
        out[i] = np.sum(gw * table * vals)
    return out.reshape(lead) / (2 * np.pi) ** n


def cm_star(fa: CMSymbol, fb: CMSymbol, phase: bool = True, conv: ConvolutionGrid | None = None) -> CMSymbol:
    """Symbol of the operator product AB from the cm kernel.

    With k = -1 imposed by the X1, X2 integrals the kernel reduces the product
    of characteristic functions to a twisted convolution. ``phase=False``
    removes the symplectic phase and yields the classical (pointwise) product.
    """
    if fa.n_modes != fb.n_modes:
        raise ValueError("symbols act on different numbers of modes")
    if fb.identity and phase:
        return fa
    if fa.identity and phase:
        return fb
    if fa.identity or fb.identity:
        raise ValueError("the phase-free product with the identity symbol is not a function")
    conv = conv or DEFAULT_CONV[fa.n_modes]
    chi = lambda m, v: _twisted(fa, fb, m, v, phase, conv)
    return CMSymbol(fa.n_modes, chi, tag=f"({fa.tag}*{fb.tag})", k_points=fa.k_points)


def _identity_collapse(fa: CMSymbol, q: TomographicQuery, regulators) -> complex:
    # chi_I = (2 pi)^N delta: the (mu1, nu1) integral collapses onto the ray of A
    return complex(CMSymbol(fa.n_modes, fa.characteristic, k_points=fa.k_points)(q.X, q.mu, q.nu, regulators))


def star_product_cm_symbols(fa: CMSymbol, fb: CMSymbol, q: TomographicQuery, regulators=quad.REGULATORS) -> complex:
    """(fA * fB)(X, mu, nu) through the cm star-product kernel."""
    if q.n_modes != fa.n_modes:
        raise ValueError("query and symbols have different numbers of modes")
    if fa.identity and fb.identity:
        raise ValueError("identity * identity is not a function of (X, mu, nu)")
    if fb.identity:
        return _identity_collapse(fa, q, regulators)
    if fa.identity:
        return _identity_collapse(fb, q, regulators)
    return complex(cm_star(fa, fb)(q.X, q.mu, q.nu, regulators))


# --------------------------------------------------------------------------
# dual kernel


def eval_dual_cm_kernel(xa, xb, x) -> ConstrainedKernelValue:
    """Tr[U(xa) U(xb) D(x)] for one mode, with (k1, k2) fixed by the two deltas.

    k1 multiplies the direction of ``xa`` and k2 that of ``xb``.
    """
    Xa, ma, na = _triple(xa, 1)
    Xb, mb, nb = _triple(xb, 1)
    X, m, n = _triple(x, 1)
    det = float(ma[0] * nb[0] - na[0] * mb[0])
    if abs(det) < 1e-14 * max(1.0, abs(ma[0] * nb[0]), abs(na[0] * mb[0])):
        raise SingularKernelError("dual kernel system is singular (mu_a nu_b = nu_a mu_b)")
    k1, k2 = np.linalg.solve(np.array([[ma[0], mb[0]], [na[0], nb[0]]]), -np.array([m[0], n[0]]))
    pref = np.exp(1j * X - 0.5j * k1 * k2 * det + 1j * (k1 * Xa + k2 * Xb))
    return ConstrainedKernelValue(complex(pref), 1.0 / (4 * np.pi**2 * abs(det)))


def dual_star(wa, wb, conv: ConvolutionGrid | None = None):
    """Dual symbol of AB from the dual kernel (one mode).

    The X1, X2 integrals fix k1 = k2 = -1, leaving
    chi_AB(m) = (2 pi)^-1 int dy chi_A(y) chi_B(m - y) exp(-(i/2)(y_mu nu - y_nu mu)).
    """
    from .reconstruction import DualSymbol

    if wa.kind == "identity":
        return wb
    if wb.kind == "identity":
        return wa
    if wa.kind != "regular" or wb.kind != "regular":
        raise ValueError("dual star products need regular dual symbols")
    conv = conv or DEFAULT_CONV[1]
    gm, gn, gw = conv.nodes(1)
    gm, gn = gm[:, 0], gn[:, 0]
    ca = wa.trace_function(gm, gn)

    def chi(mu, nu):
        mu, nu = np.broadcast_arrays(np.asarray(mu, float), np.asarray(nu, float))
        out = np.empty(mu.shape, dtype=complex)
        for idx in np.ndindex(mu.shape):
            m, v = mu[idx], nu[idx]
            ph = np.exp(-0.5j * (gm * v - gn * m))
            out[idx] = np.sum(gw * ca * wb.trace_function(m - gm, v - gn) * ph) / (2 * np.pi)
        return out

    return DualSymbol(chi, tag=f"({wa.tag}*{wb.tag})")


# --------------------------------------------------------------------------
# transitions between symplectic and center-of-mass maps


def transition_kernel(direction: str, x1, x2) -> ConstrainedKernelValue:
    """Transition kernels Tr[D_cm(x1) U_s(x2)] ('cm->symplectic') and Tr[D_s(x1) U_cm(x2)] ('symplectic->cm').

    For 'cm->symplectic' x1 = (X, mu, nu) and x2 = (X_vec, mu, nu); the k vector is
    solved from the mu-deltas (nu where a mu component vanishes). Remaining
    constraints act on the components of (mu1, nu1).
    """
    if direction == "cm->symplectic":
        X1, m1, n1 = _triple(x1)
        X2 = np.atleast_1d(np.asarray(x2[0], float))
        _, m2, n2 = _triple((0.0, x2[1], x2[2]), m1.size)
        n = m1.size
        if n > 2:
            raise ValueError("transition kernels are implemented for N <= 2")
        k = np.empty(n)
        jac = 1.0
        cons = []
        for j in range(n):
            if m2[j] == 0 and n2[j] == 0:
                raise SingularKernelError(f"mode {j} has a zero scaling vector")
            use_mu = abs(m2[j]) >= abs(n2[j])
            piv = m2[j] if use_mu else n2[j]
            k[j] = (m1[j] if use_mu else n1[j]) / piv
            jac /= abs(piv)
            c = np.zeros(2 * n)
            if use_mu:  # nu1_j - (nu2_j / mu2_j) mu1_j = 0
                c[n + j], c[j] = 1.0, -n2[j] / m2[j]
            else:
                c[j], c[n + j] = 1.0, -m2[j] / n2[j]
            cons.append(LinearConstraint(c))
        pref = np.exp(1j * X1 - 1j * (k @ X2)) / (2 * np.pi) ** n
        names = tuple(f"mu1_{j + 1}" for j in range(n)) + tuple(f"nu1_{j + 1}" for j in range(n))
        return ConstrainedKernelValue(complex(pref), jac, tuple(cons), names)
    if direction == "symplectic->cm":
        X1 = np.atleast_1d(np.asarray(x1[0], float))
        _, m1, n1 = _triple((0.0, x1[1], x1[2]))
        X2, m2, n2 = _triple(x2, m1.size)
        n = m1.size
        vec2 = np.concatenate([m2, n2])
        vec1 = np.concatenate([m1, n1])
        i = int(np.argmax(np.abs(vec2)))
        if vec2[i] == 0:
            raise SingularKernelError("the cm scaling vector is zero")
        k = vec1[i] / vec2[i]
        cons = []
        for j in range(2 * n):
            if j == i:
                continue
            c = np.zeros(2 * n)
            c[j] = 1.0
            c[i] -= vec2[j] / vec2[i]
            cons.append(LinearConstraint(c))
        pref = np.exp(1j * X1.sum() - 1j * k * X2) / (2 * np.pi)
        names = tuple(f"mu1_{j + 1}" for j in range(n)) + tuple(f"nu1_{j + 1}" for j in range(n))
        return ConstrainedKernelValue(complex(pref), 1.0 / abs(vec2[i]), tuple(cons), names)
    raise ValueError("direction must be 'cm->symplectic' or 'symplectic->cm'")


def apply_transition(direction: str, w: Callable, query) -> float:
    """Contract a transition kernel with a tomogram; the deltas fix mu1 = k o mu2, nu1 = k o nu2."""
    if direction == "cm->symplectic":
        if not isinstance(query, SymplecticQuery):
            raise TypeError("cm->symplectic needs a SymplecticQuery")
        return symplectic_from_cm(w, query)
    if direction == "symplectic->cm":
        if not isinstance(query, TomographicQuery):
            raise TypeError("symplectic->cm needs a TomographicQuery")
        return cm_from_symplectic(w, query)
    raise ValueError("direction must be 'cm->symplectic' or 'symplectic->cm'")

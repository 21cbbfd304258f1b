import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomokit.errors import SingularKernelError
from tomokit.grids import Grid1D
from tomokit.kernels import (
    CMSymbol, cm_kernel_from_groenewold, cm_star, cm_two_mode_weight, dual_star, eval_cm_kernel_two_modes,
    eval_dual_cm_kernel, eval_groenewold_kernel, star_product_cm_symbols, transition_kernel, apply_transition,
)
from tomokit.oracles import cm_symbol_of_operator, coherent_dyad_operator, dual_symbol_of_operator
from tomokit.reconstruction import DualSymbol
from tomokit.states import CoherentState
from tomokit.tomography import StateSymplecticTomogram, StateTomogram, SymplecticQuery, TomographicQuery

AX = Grid1D.with_spacing(9.0, 0.05)
real = st.floats(-3, 3, allow_nan=False)


def _support(t=1.3):
    m3, n3 = np.array([0.7, -1.1]), np.array([0.9, 0.6])
    m1, n1 = np.array([0.3, 0.5]), np.array([-0.4, 0.2])
    return (0.0, m1, n1), (0.0, t * m3 - m1, t * n3 - n1), (0.0, m3, n3)


def test_cm_kernel_constraints_and_prefactor():
    x1, x2, x3 = _support()
    kv = eval_cm_kernel_two_modes(x1, x2, x3)
    z = np.concatenate([x1[1], x1[2], x2[1], x2[2]])
    assert kv.on_support(z)
    assert not kv.on_support(z + 0.1)


def test_cm_kernel_zero_phase_prefactor():
    m3, n3 = np.array([1.0, 2.0]), np.array([0.5, 1.5])
    m1, n1 = 0.5 * m3, 0.5 * n3
    kv = eval_cm_kernel_two_modes((0.0, m1, n1), (0.0, m3 - m1, n3 - n1), (0.0, m3, n3))
    expected = (2 * np.pi) ** -3 / abs(n3[0] * n3[1] * m3[0] * m3[1])
    assert kv.value == pytest.approx(expected, rel=1e-12)
    assert abs(kv.value.imag) < 1e-15


def test_cm_kernel_singular():
    with pytest.raises(SingularKernelError):
        eval_cm_kernel_two_modes((0, [1, 1], [1, 1]), (0, [1, 1], [1, 1]), (0, [0, 1], [1, 1]))


def test_groenewold_kernel_examples():
    p = ([0.3], [0.1])
    assert eval_groenewold_kernel(p, p, p) == pytest.approx(np.pi**-2)
    val = eval_groenewold_kernel(([1], [0]), ([0], [1]), ([0], [0]))
    assert val == pytest.approx(np.pi**-2 * np.exp(2j))


@settings(max_examples=50, deadline=None)
@given(*[real] * 6)
def test_groenewold_modulus_and_antisymmetry(a, b, c, d, e, f):
    p1, p2, p3 = ([a], [b]), ([c], [d]), ([e], [f])
    k = eval_groenewold_kernel(p1, p2, p3)
    assert abs(k) == pytest.approx(np.pi**-2, rel=1e-12)
    assert eval_groenewold_kernel(p2, p1, p3) == pytest.approx(np.conj(k), abs=1e-12)


def test_groenewold_route_matches_cm_kernel():
    x1, x2, x3 = _support()
    a = cm_two_mode_weight(x1, x2, x3)
    b = cm_kernel_from_groenewold(x1, x2, x3)
    assert abs(a - b) <= 1e-2 * abs(a)


def test_classical_limit_of_weight():
    x1, x2, x3 = _support()
    classical = cm_two_mode_weight(x1, x2, x3, phase=False)
    small_hbar = cm_kernel_from_groenewold(x1, x2, x3, regulators=(1e-6,), hbar=1e-3)
    assert abs(classical - small_hbar) <= 1e-2 * abs(classical)


def test_zero_symbols_give_zero():
    zero = CMSymbol(1, lambda m, v: np.zeros(np.shape(m)[:-1], complex))
    vac = CMSymbol.dyad(0.0, 0.0)
    assert abs(complex(cm_star(zero, vac)(0.2, np.array([0.7]), np.array([0.1])))) < 1e-14


@pytest.mark.parametrize("X,m,v", [(0.3, 0.9, -0.4), (-0.5, 0.2, 1.1)])
def test_cm_star_identity_and_idempotence(X, m, v):
    vac = CMSymbol.dyad(0.0, 0.0)
    q = TomographicQuery(X, [m], [v])
    ref = cm_symbol_of_operator(coherent_dyad_operator(0, 0, AX), X, m, v)
    assert star_product_cm_symbols(vac, CMSymbol.identity_symbol(), q) == pytest.approx(ref, abs=1e-3)
    assert star_product_cm_symbols(CMSymbol.identity_symbol(), vac, q) == pytest.approx(ref, abs=1e-3)
    assert star_product_cm_symbols(vac, vac, q) == pytest.approx(ref, abs=1e-3)


def test_cm_star_hermitian_symmetry():
    # Tr[AB U] = conj(Tr[B^+ A^+ U]) for the Hermitian dequantizer
    a, b = (0.4 + 0.2j, 0.1j), (-0.3, 0.3 - 0.2j)
    X, m, v = 0.3, np.array([0.6]), np.array([-0.8])
    ab = complex(cm_star(CMSymbol.dyad(*a), CMSymbol.dyad(*b))(X, m, v))
    ba = complex(cm_star(CMSymbol.dyad(b[1], b[0]), CMSymbol.dyad(a[1], a[0]))(X, m, v))
    assert ab == pytest.approx(np.conj(ba), abs=1e-6)


def test_dual_kernel_examples():
    with pytest.raises(SingularKernelError):
        eval_dual_cm_kernel((0, [1.0], [2.0]), (0, [2.0], [4.0]), (0, [1.0], [1.0]))
    xa, xb = (0.4, [0.3], [1.2]), (0.7, [0.8], [-0.5])
    x = (0.25, [-0.8], [0.5])
    kv = eval_dual_cm_kernel(xa, xb, x)
    det = abs(0.8 * 1.2 - (-0.5) * 0.3)
    assert kv.value == pytest.approx(np.exp(1j * (0.25 + 0.7)) / (4 * np.pi**2 * det), rel=1e-12)


def test_dual_star_against_operator():
    a, b = 0.5 + 0.2j, -0.3 + 0.4j
    ax = Grid1D(-9, 9, 128)
    prod = coherent_dyad_operator(a, b, ax).matmul(coherent_dyad_operator(b, a, ax))
    d = dual_star(DualSymbol.coherent_dyad(a, b), DualSymbol.coherent_dyad(b, a))
    assert complex(d(0.3, 0.7, -0.4)) == pytest.approx(dual_symbol_of_operator(prod, 0.3, 0.7, -0.4), abs=1e-6)
    da = DualSymbol.coherent_dyad(a, b)
    assert dual_star(da, DualSymbol.identity()) is da


def test_transition_kernels():
    kv = transition_kernel("symplectic->cm", ([0.3], [1.0], [0.5]), (0.3, [1.0], [0.5]))
    assert kv.value == pytest.approx(1 / (2 * np.pi * 1.0), rel=1e-12)
    with pytest.raises(SingularKernelError):
        transition_kernel("cm->symplectic", (0.0, [1.0], [0.0]), ([0.0], [0.0], [0.0]))
    with pytest.raises(ValueError):
        transition_kernel("sideways", (0, [1], [0]), (0, [1], [0]))


def test_transition_contraction_vacuum():
    w = StateTomogram(CoherentState.vacuum(1))
    ws = StateSymplecticTomogram(CoherentState.vacuum(1))
    q = SymplecticQuery([0.4], [0.8], [0.6])
    assert apply_transition("cm->symplectic", w, q) == pytest.approx(float(ws(q.X, q.mu, q.nu)), abs=1e-3)
    tq = TomographicQuery(0.4, [0.8], [0.6])
    assert apply_transition("symplectic->cm", ws, tq) == pytest.approx(float(w(0.4, [0.8], [0.6])), abs=1e-10)
    lam = 2.0
    big = apply_transition("cm->symplectic", w, SymplecticQuery([0.8], [1.6], [1.2]))
    assert big == pytest.approx(apply_transition("cm->symplectic", w, q) / lam, abs=1e-6)

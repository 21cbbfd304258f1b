"""Kernel cross-checks for ``tomokit kernel-check``.

Each entry compares a kernel-based value (lhs) with an independent oracle (rhs).
"""
from __future__ import annotations

import numpy as np

from .grids import Grid1D
from .kernels import CMSymbol, cm_kernel_from_groenewold, cm_star, cm_two_mode_weight, dual_star
from .oracles import cm_symbol_of_operator, coherent_dyad_operator, dual_symbol_of_operator
from .reconstruction import DualSymbol, mean_value
from .states import CatState, CoherentState
from .tolerances import DEFAULT, Tolerances
from .tomography import StateSymplecticTomogram, StateTomogram, SymplecticQuery, symplectic_from_cm


def _entry(name: str, lhs, rhs, tol: float) -> dict:
    err = float(abs(complex(lhs) - complex(rhs)))
    return {"check_name": name, "lhs": lhs, "rhs": rhs, "abs_err": err, "tol": float(tol),
            "pass": bool(err <= tol)}


def _on_support_triple():
    m3, n3 = np.array([0.7, -1.1]), np.array([0.9, 0.6])
    m1, n1 = np.array([0.3, 0.5]), np.array([-0.4, 0.2])
    t = 1.3
    x1 = (0.4, m1, n1)
    x2 = (-0.2, t * m3 - m1, t * n3 - n1)
    return x1, x2, (0.5, m3, n3)


def run_checks(tol: Tolerances = DEFAULT) -> list[dict]:
    out = []
    x1, x2, x3 = _on_support_triple()
    out.append(_entry("cm_kernel_vs_groenewold", cm_two_mode_weight(x1, x2, x3),
                      cm_kernel_from_groenewold(x1, x2, x3), tol.xval))

    ax = Grid1D.with_spacing(9.0, 0.05)
    a, b = 0.5 + 0.3j, -0.4j
    prod = coherent_dyad_operator(a, 0, ax).matmul(coherent_dyad_operator(0, b, ax))
    X, m, v = 0.4, 0.8, -0.6
    lhs = complex(cm_star(CMSymbol.dyad(a, 0), CMSymbol.dyad(0, b))(X, np.array([m]), np.array([v])))
    out.append(_entry("cm_star_vs_operator", lhs, cm_symbol_of_operator(prod, X, m, v), tol.xval))

    wd = dual_star(DualSymbol.coherent_dyad(a, 0), DualSymbol.coherent_dyad(0, b))
    out.append(_entry("dual_star_vs_operator", complex(wd(X, m, v)),
                      dual_symbol_of_operator(prod, X, m, v), tol.xval))

    mv = mean_value(StateTomogram(CoherentState((1.0,))), DualSymbol.vacuum())
    out.append(_entry("mean_value_vacuum_projector", mv, float(np.exp(-1.0)), tol.xval))

    st = CatState((0.6 - 0.3j,), 1)
    q = SymplecticQuery([0.3], [0.8], [0.5])
    out.append(_entry("cm_to_symplectic_transition", symplectic_from_cm(StateTomogram(st), q),
                      float(StateSymplecticTomogram(st)(q.X, q.mu, q.nu)), tol.xval))
    return out

"""Default numerical tolerances.

Every value here can be overridden from a run config (``tol.<name> = value``).
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-6  # quadrature norm of grid states and Wigner functions
    herm: float = 1e-10  # Hermiticity residual of density matrices
    tr: float = 1e-8  # trace of reduced density matrices
    psd: float = 1e-8  # most negative admissible eigenvalue
    rt: float = 1e-4  # Weyl symbol round trip, max norm
    edge: float = 1e-10  # symbol magnitude allowed at the grid edge for star products
    xval: float = 1e-3  # closed form vs. quadrature oracle
    osc: float = 1e-2  # regulated oscillatory integrals
    neg: float = 1e-6  # most negative admissible tomogram value
    rec: float = 1e-3  # density reconstruction (Frobenius)

    def override(self, **values: float) -> "Tolerances":
        known = {f.name for f in fields(self)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in values.items()})


DEFAULT = Tolerances()

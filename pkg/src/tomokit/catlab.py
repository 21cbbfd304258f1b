"""Two-mode Schroedinger-cat tomograms and linear entropy; plot data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AccuracyError, InvalidStateError
from .states import CatState
from .tomography import TomographicQuery, cat_cm_closed_form


@dataclass(frozen=True)
class EntropySweepRow:
    alpha1_sq: float
    alpha2_sq: float
    parity: int
    entropy: float


def cat_cm_tomogram(state: CatState, q: TomographicQuery) -> float:
    """Closed-form cm tomogram of a two-mode cat state."""
    if not isinstance(state, CatState) or state.n_modes != 2:
        raise ValueError("cat_cm_tomogram expects a two-mode CatState")
    if q.n_modes != 2:
        raise ValueError("query must have two-component mu and nu")
    return float(cat_cm_closed_form(state.alpha, state.parity, q.X, q.mu, q.nu))


def cat_linear_entropy(alpha1_sq: float, alpha2_sq: float, parity: int) -> float:
    """S = 1 - Tr rho_1^2 of either mode of a two-mode cat.

    S = 1/2 - 1/2 [(e^{-2a1} + s e^{-2a2}) / (1 + s e^{-2a1-2a2})]^2 with s the parity.
    The odd case is written with expm1 so small amplitudes keep full precision.
    """
    a1, a2 = float(alpha1_sq), float(alpha2_sq)
    if a1 < 0 or a2 < 0 or not (np.isfinite(a1) and np.isfinite(a2)):
        raise ValueError("squared amplitudes must be finite and nonnegative")
    if parity == 1:
        ratio = (np.exp(-2 * a1) + np.exp(-2 * a2)) / (1 + np.exp(-2 * (a1 + a2)))
    elif parity == -1:
        if a1 == 0 and a2 == 0:
            raise InvalidStateError("odd cat with all amplitudes zero is the zero vector")
        ratio = (np.expm1(-2 * a1) - np.expm1(-2 * a2)) / -np.expm1(-2 * (a1 + a2))
    else:
        raise ValueError("parity must be +1 or -1")
    return float(0.5 - 0.5 * ratio * ratio)


def _check_shape(rows: list[EntropySweepRow], parity: int) -> None:
    """Even curves rise monotonically; odd curves rise to 0.5 at a1 = a2, then fall."""
    s = np.array([r.entropy for r in rows])
    a1 = np.array([r.alpha1_sq for r in rows])
    a2 = rows[0].alpha2_sq
    slack = 1e-12
    if parity == 1:
        ok = np.all(np.diff(s) >= -slack)
    else:
        rising = a1 <= a2
        ok = np.all(np.diff(s[rising]) >= -slack) and np.all(np.diff(s[~rising]) <= slack)
    if not ok or s.min() < -1e-12 or s.max() > 0.5 + 1e-12:
        raise AccuracyError(f"entropy curve for |alpha2|^2 = {a2} has an unexpected shape")


def entropy_sweep(parity: int, alpha2_sq_list: Sequence[float] = (0.5, 1.0, 2.0),
                  alpha1_sq_range: tuple[float, float, int] = (0.0, 5.0, 200)) -> list[EntropySweepRow]:
    lo, hi, steps = alpha1_sq_range
    if not lo <= hi:
        raise ValueError(f"invalid range: min {lo} exceeds max {hi}")
    if int(steps) != steps or steps < 1 or lo < 0:
        raise ValueError("range needs a nonnegative start and a positive integer step count")
    if not len(alpha2_sq_list):
        raise ValueError("need at least one |alpha2|^2 value")
    rows: list[EntropySweepRow] = []
    for a2 in alpha2_sq_list:
        curve = [
            EntropySweepRow(float(a1), float(a2), parity, cat_linear_entropy(a1, a2, parity))
            for a1 in np.linspace(lo, hi, int(steps))
        ]
        _check_shape(curve, parity)
        rows.extend(curve)
    return rows

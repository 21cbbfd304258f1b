"""Uniform one-dimensional grids and trapezoid quadrature weights."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``min, min + h, ..., max`` with ``points`` nodes."""

    min: float
    max: float
    points: int

    def __post_init__(self):
        if not (np.isfinite(self.min) and np.isfinite(self.max)):
            raise ValueError("grid bounds must be finite")
        if not self.min < self.max:
            raise ValueError(f"grid min ({self.min}) must be below max ({self.max})")
        if int(self.points) != self.points or self.points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.points}")
        object.__setattr__(self, "points", int(self.points))

    @classmethod
    def symmetric(cls, half_width: float, points: int) -> "Grid1D":
        return cls(-float(half_width), float(half_width), points)

    @classmethod
    def with_spacing(cls, half_width: float, spacing: float) -> "Grid1D":
        """Symmetric grid with an odd node count (origin included), spacing <= ``spacing``."""
        n = 2 * int(np.ceil(half_width / spacing)) + 1
        return cls(-float(half_width), float(half_width), n)

    @property
    def spacing(self) -> float:
        return (self.max - self.min) / (self.points - 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.full(self.points, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return w

    def half_grid(self) -> "Grid1D":
        """Grid that also contains every midpoint of this one."""
        return Grid1D(self.min, self.max, 2 * self.points - 1)

    def node_indices(self, x, rtol: float = 1e-9) -> np.ndarray | None:
        """Integer indices of ``x`` if every value sits on a node, else ``None``."""
        s = (np.asarray(x, dtype=float) - self.min) / self.spacing
        idx = np.rint(s)
        if np.all(np.abs(s - idx) <= rtol * max(1.0, np.max(np.abs(s), initial=0.0))) and np.all(
            (idx >= 0) & (idx < self.points)
        ):
            return idx.astype(int)
        return None

    def header(self) -> str:
        return f"# axis: {self.min!r} {self.max!r} {self.points}"


def trapezoid(values: np.ndarray, grid: Grid1D, axis: int = -1) -> np.ndarray:
    """Composite trapezoid rule along ``axis``."""
    values = np.moveaxis(np.asarray(values), axis, -1)
    return values @ grid.weights

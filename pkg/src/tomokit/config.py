"""Plain-text ``key = value`` run configuration.

Lines starting with ``#`` are comments. Lists are comma separated. The only key
that may repeat is ``query``; every other key may appear once.
"""
from __future__ import annotations

import importlib.util
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import TomokitError
from .grids import Grid1D
from .states import CatState, CoherentState, State
from .tolerances import DEFAULT, Tolerances


class ConfigError(TomokitError, ValueError):
    """Malformed or inconsistent run configuration."""


_SCALAR_KEYS = {
    "state", "modes", "alpha_re", "alpha_im", "parity", "grid.min", "grid.max", "grid.points",
    "seed", "prior", "queries", "method", "out", "sweep.alpha2_sq", "sweep.min", "sweep.max", "sweep.steps",
}
_REPEATABLE = {"query"}


def _floats(text: str, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ConfigError(f"{key}: expected a comma separated list of numbers") from exc


@dataclass(frozen=True)
class RunConfig:
    state: str = "vacuum"
    modes: int | None = None
    alpha_re: tuple[float, ...] = ()
    alpha_im: tuple[float, ...] = ()
    parity: int = 1
    grid_min: float | None = None
    grid_max: float | None = None
    grid_points: int | None = None
    seed: int = 42
    prior: str | None = None
    queries_file: str | None = None
    queries: tuple[tuple[float, ...], ...] = ()
    method: str = "analytic"
    out: str | None = None
    sweep_alpha2_sq: tuple[float, ...] = (0.5, 1.0, 2.0)
    sweep_range: tuple[float, float, int] = (0.0, 5.0, 200)
    tol: Tolerances = field(default_factory=lambda: DEFAULT)

    # -- parsing ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        values: dict[str, str] = {}
        queries: list[str] = []
        tol: dict[str, float] = {}
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {n}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if key.startswith("tol."):
                try:
                    tol[key[4:]] = float(value)
                except ValueError as exc:
                    raise ConfigError(f"line {n}: {key} needs a number") from exc
            elif key in _REPEATABLE:
                queries.append(value)
            elif key in _SCALAR_KEYS:
                if key in values:
                    raise ConfigError(f"line {n}: duplicate key {key!r}")
                values[key] = value
            else:
                raise ConfigError(f"line {n}: unknown key {key!r}")
        return cls().updated(values, queries, tol)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        return cls.parse(text)

    def updated(self, values: dict[str, str], queries=(), tol: dict[str, float] | None = None) -> "RunConfig":
        """Apply string-valued settings, as read from a file or from flags."""
        kw: dict = {}
        try:
            for key, v in values.items():
                if key == "state":
                    if v not in ("vacuum", "coherent", "cat"):
                        raise ConfigError("state must be vacuum, coherent or cat")
                    kw["state"] = v
                elif key == "modes":
                    kw["modes"] = int(v)
                elif key in ("alpha_re", "alpha_im"):
                    kw[key] = _floats(v, key)
                elif key == "parity":
                    kw["parity"] = {"+1": 1, "1": 1, "+": 1, "-1": -1, "-": -1}[v]
                elif key in ("grid.min", "grid.max"):
                    kw[key.replace(".", "_")] = float(v)
                elif key == "grid.points":
                    kw["grid_points"] = int(v)
                elif key == "seed":
                    kw["seed"] = int(v)
                elif key == "prior":
                    if v != "gaussian" and not v.startswith("custom:"):
                        raise ConfigError("prior must be 'gaussian' or 'custom:<path>'")
                    kw["prior"] = v
                elif key == "queries":
                    kw["queries_file"] = v
                elif key == "method":
                    if v not in ("analytic", "radon"):
                        raise ConfigError("method must be analytic or radon")
                    kw["method"] = v
                elif key == "out":
                    kw["out"] = v
                elif key == "sweep.alpha2_sq":
                    kw["sweep_alpha2_sq"] = _floats(v, key)
                elif key in ("sweep.min", "sweep.max", "sweep.steps"):
                    lo, hi, steps = kw.get("sweep_range", self.sweep_range)
                    if key == "sweep.min":
                        lo = float(v)
                    elif key == "sweep.max":
                        hi = float(v)
                    else:
                        steps = int(v)
                    kw["sweep_range"] = (lo, hi, steps)
                else:
                    raise ConfigError(f"unknown key {key!r}")
            if queries:
                kw["queries"] = self.queries + tuple(_floats(q, "query") for q in queries)
            if tol:
                kw["tol"] = self.tol.override(**tol)
        except ConfigError:
            raise
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"invalid value: {exc}") from exc
        return replace(self, **kw)

    # -- derived objects ---------------------------------------------------

    @property
    def n_modes(self) -> int:
        n = self.modes
        for lst in (self.alpha_re, self.alpha_im):
            if lst:
                if n is not None and len(lst) != n:
                    raise ConfigError(f"amplitude list has {len(lst)} entries but modes = {n}")
                n = len(lst)
        return 1 if n is None else n

    def build_state(self) -> State:
        n = self.n_modes
        if n < 1:
            raise ConfigError("modes must be positive")
        re = self.alpha_re or (0.0,) * n
        im = self.alpha_im or (0.0,) * n
        alphas = tuple(complex(a, b) for a, b in zip(re, im))
        if self.state == "vacuum":
            if any(alphas):
                raise ConfigError("vacuum state takes no amplitudes")
            return CoherentState.vacuum(n)
        if self.state == "coherent":
            return CoherentState(alphas)
        return CatState(alphas, self.parity)

    def axis(self, default: Grid1D) -> Grid1D:
        """Position grid from the grid.* keys, falling back on ``default``."""
        if self.grid_min is None and self.grid_max is None and self.grid_points is None:
            return default
        lo = default.min if self.grid_min is None else self.grid_min
        hi = default.max if self.grid_max is None else self.grid_max
        pts = default.points if self.grid_points is None else self.grid_points
        return Grid1D(lo, hi, pts)

    def query_batch(self) -> list[tuple[float, np.ndarray, np.ndarray]]:
        """Queries as (X, mu, nu); rows hold X followed by N mu and N nu components."""
        n = self.n_modes
        rows = list(self.queries)
        if self.queries_file:
            rows.extend(read_query_file(self.queries_file))
        out = []
        for r in rows:
            if len(r) != 1 + 2 * n:
                raise ConfigError(f"query {r} needs {1 + 2 * n} numbers for {n} mode(s)")
            out.append((r[0], np.array(r[1:1 + n]), np.array(r[1 + n:])))
        return out

    def build_prior(self):
        from .probability import ParameterPrior

        if self.prior in (None, "gaussian"):
            return ParameterPrior.gaussian(self.n_modes)
        path = Path(self.prior.split(":", 1)[1])
        spec = importlib.util.spec_from_file_location("tomokit_custom_prior", path)
        if spec is None or not path.is_file():
            raise ConfigError(f"cannot load prior module {path}")
        mod = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(mod)
        for name in ("density", "half_width"):
            if not hasattr(mod, name):
                raise ConfigError(f"prior module {path} must define {name!r}")
        return ParameterPrior("custom", self.n_modes, density=mod.density, half_width=float(mod.half_width))


def read_query_file(path: str | Path) -> list[tuple[float, ...]]:
    """CSV batch file; a header line and ``#`` comments are skipped."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read query file {path}: {exc.strerror}") from exc
    rows = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#") or line[0].isalpha():
            continue
        rows.append(_floats(line, str(path)))
    return rows

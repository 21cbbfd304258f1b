"""``tomokit`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 numerical accuracy error.
"""
from __future__ import annotations

import argparse
import contextlib
import os
import sys
from pathlib import Path

import numpy as np

from . import io, verify
from .catlab import entropy_sweep
from .config import ConfigError, RunConfig
from .errors import AccuracyError
from .grids import Grid1D
from .states import GridDensityMatrix, default_axis, discretize
from .tomography import TomographicQuery, WignerTomogram, StateTomogram
from .weyl import PhaseSpaceGrid, wigner_from_wavefunction

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(t.replace(" ", "")) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"--alpha: cannot parse {text!r} as complex numbers") from exc


def _state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", choices=("vacuum", "coherent", "cat"))
    p.add_argument("--alpha", help="comma separated complex amplitudes, e.g. 1,0.5+0.2j")
    p.add_argument("--parity", choices=("+1", "-1"))
    p.add_argument("--modes", type=int)
    p.add_argument("--grid-min", type=float)
    p.add_argument("--grid-max", type=float)
    p.add_argument("--grid-points", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--out", help="output file (directory for entropy-sweep)")
    common.add_argument("--seed", type=int)
    common.add_argument("--tolerance", action="append", default=[],
                        help="NAME=VALUE to override one tolerance; for verify, a bare number replaces all")

    parser = _Parser(prog="tomokit", description="Center-of-mass tomography toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tomogram", parents=[common], help="evaluate cm tomograms for a batch of queries")
    _state_flags(p)
    p.add_argument("--query", action="append", default=[], help="X,mu1..muN,nu1..nuN")
    p.add_argument("--queries", help="CSV batch file of queries")
    p.add_argument("--method", choices=("analytic", "radon"))
    p.add_argument("--prior", help="gaussian or custom:<path>; adds a joint-probability column")

    p = sub.add_parser("entropy-sweep", parents=[common], help="linear entropy curves of two-mode cats")
    p.add_argument("--alpha2-sq", help="comma separated |alpha2|^2 values")
    p.add_argument("--alpha1-sq-range", help="min,max,steps")

    p = sub.add_parser("roundtrip", parents=[common], help="reconstruct rho from its cm tomogram")
    _state_flags(p)

    sub.add_parser("kernel-check", parents=[common], help="cross-check kernels against oracles")

    p = sub.add_parser("wigner", parents=[common], help="single-mode Wigner function on a grid")
    _state_flags(p)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", action="append", choices=sorted(verify.SUITES))
    return parser


def _config(args) -> tuple[RunConfig, float | None]:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    flags: dict[str, str] = {}
    for name, key in (("state", "state"), ("parity", "parity"), ("modes", "modes"), ("grid_min", "grid.min"),
                      ("grid_max", "grid.max"), ("grid_points", "grid.points"), ("seed", "seed"),
                      ("queries", "queries"), ("method", "method"), ("prior", "prior"), ("out", "out"),
                      ("alpha2_sq", "sweep.alpha2_sq")):
        v = getattr(args, name, None)
        if v is not None:
            flags[key] = str(v)
    alpha = getattr(args, "alpha", None)
    if alpha is not None:
        vals = _complex_list(alpha)
        flags["alpha_re"] = ",".join(repr(a.real) for a in vals)
        flags["alpha_im"] = ",".join(repr(a.imag) for a in vals)
        if "state" not in flags and cfg.state == "vacuum":
            flags["state"] = "coherent"
    rng = getattr(args, "alpha1_sq_range", None)
    if rng is not None:
        parts = rng.split(",")
        if len(parts) != 3:
            raise ConfigError("--alpha1-sq-range needs min,max,steps")
        flags.update({"sweep.min": parts[0], "sweep.max": parts[1], "sweep.steps": parts[2]})
    tol: dict[str, float] = {}
    global_tol = None
    for t in args.tolerance:
        if "=" in t:
            k, v = t.split("=", 1)
            tol[k.strip()] = v
        else:
            global_tol = t
    try:
        tol = {k: float(v) for k, v in tol.items()}
        global_tol = None if global_tol is None else float(global_tol)
    except ValueError as exc:
        raise ConfigError(f"--tolerance: {exc}") from exc
    if global_tol is not None and args.command != "verify":
        raise ConfigError("a bare --tolerance value is only accepted by verify; use NAME=VALUE")
    return cfg.updated(flags, getattr(args, "query", []) or [], tol), global_tol


def cmd_tomogram(cfg: RunConfig) -> int:
    batch = cfg.query_batch()
    if not batch:
        raise ConfigError("query batch is empty; pass --query or --queries")
    state = cfg.build_state()
    n = state.n_modes
    queries = [TomographicQuery(X, m, v) for X, m, v in batch]
    if cfg.method == "radon":
        if n > 2:
            raise ConfigError("the radon method supports at most two modes")
        axes = [cfg.axis(default_axis(state, points=81 if n == 2 else 161))] * n
        psi = discretize(state, axes, cfg.tol)
        w = WignerTomogram(wigner_from_wavefunction(psi, PhaseSpaceGrid.for_axes(axes, stride=2 if n == 1 else 4)))
    else:
        w = StateTomogram(state)
    prior = cfg.build_prior() if cfg.prior is not None else None
    header = ["X"] + [f"mu{i + 1}" for i in range(n)] + [f"nu{i + 1}" for i in range(n)] + ["w"]
    if prior is not None:
        header.append("joint")
    rows = []
    for q in queries:
        val = float(w(q.X, q.mu, q.nu))
        row = [q.X, *q.mu, *q.nu, val]
        if prior is not None:
            row.append(val * float(prior(q.mu, q.nu)))
        rows.append(row)
    io.emit(io.csv_text(header, rows), cfg.out)
    return EXIT_OK


def cmd_entropy_sweep(cfg: RunConfig) -> int:
    texts = {}
    for parity, label in ((1, "plus"), (-1, "minus")):
        rows = entropy_sweep(parity, cfg.sweep_alpha2_sq, cfg.sweep_range)
        texts[label] = (rows, io.csv_text(["alpha1_sq", "alpha2_sq", "parity", "entropy"],
                                           [(r.alpha1_sq, r.alpha2_sq, str(r.parity), r.entropy) for r in rows]))
    if cfg.out is None:
        sys.stdout.write("".join(t for _, t in texts.values()))
        return EXIT_OK
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    for label, (rows, text) in texts.items():
        (out / f"entropy_{label}.csv").write_text(text)
        # gnuplot layout: one column per |alpha2|^2 curve, whitespace separated
        a2 = list(cfg.sweep_alpha2_sq)
        steps = len(rows) // len(a2)
        lines = ["# alpha1_sq " + " ".join(f"S(alpha2_sq={io.fmt(a)})" for a in a2)]
        for i in range(steps):
            lines.append(" ".join([io.fmt(rows[i].alpha1_sq)] + [io.fmt(rows[j * steps + i].entropy)
                                                                 for j in range(len(a2))]))
        (out / f"entropy_{label}.dat").write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_roundtrip(cfg: RunConfig) -> int:
    state = cfg.build_state()
    if state.n_modes != 1:
        raise ConfigError("roundtrip reconstructs single-mode states")
    from .reconstruction import density_from_cm_tomogram

    axis = cfg.axis(Grid1D(-8.0, 8.0, 128))
    psi = discretize(state, [axis], cfg.tol)
    ref = GridDensityMatrix.from_wavefunction(psi)
    rho = density_from_cm_tomogram(StateTomogram(state), axis)
    report = {
        "state": cfg.state,
        "frobenius_error": rho.frobenius_distance(ref),
        "fidelity": rho.expectation(psi),
        "trace": float(np.real(rho.trace())),
        "hermiticity_residual": rho.hermiticity_residual(),
    }
    report["pass"] = report["frobenius_error"] <= cfg.tol.rec and report["fidelity"] >= 1 - cfg.tol.rec
    io.emit(io.json_text(report), cfg.out)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_kernel_check(cfg: RunConfig) -> int:
    from .kernelcheck import run_checks

    report = run_checks(cfg.tol)
    io.emit(io.json_text(report), cfg.out)
    return EXIT_OK if all(r["pass"] for r in report) else EXIT_VERIFY


def cmd_wigner(cfg: RunConfig) -> int:
    state = cfg.build_state()
    if state.n_modes != 1:
        raise ConfigError("wigner exports single-mode states")
    default = default_axis(state, points=129)
    if default.points % 2 == 0:
        default = Grid1D(default.min, default.max, default.points + 1)
    axis = cfg.axis(default)
    psi = discretize(state, [axis], cfg.tol)
    grid = PhaseSpaceGrid.for_axes([axis], stride=2)
    W = wigner_from_wavefunction(psi, grid)
    q, p = grid.position[0], grid.momentum[0]
    Q, P = np.meshgrid(q.nodes, p.nodes, indexing="ij")
    rows = zip(Q.ravel(), P.ravel(), W.samples.ravel())
    io.emit(io.csv_text(["q", "p", "W"], rows, axes=[q, p]), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suites, override) -> int:
    report = verify.run(suites, cfg.tol, cfg.seed, override)
    io.emit(io.json_text(report), cfg.out)
    return EXIT_OK if all(c["pass"] for c in report) else EXIT_VERIFY


@contextlib.contextmanager
def _thread_cap():
    n = os.environ.get("TOMOKIT_THREADS")
    if not n:
        yield
        return
    try:
        limit = int(n)
    except ValueError:
        raise ConfigError("TOMOKIT_THREADS must be a positive integer") from None
    if limit < 1:
        raise ConfigError("TOMOKIT_THREADS must be a positive integer")
    from threadpoolctl import threadpool_limits

    with threadpool_limits(limits=limit):
        yield


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg, override = _config(args)
        with _thread_cap():
            if args.command == "tomogram":
                return cmd_tomogram(cfg)
            if args.command == "entropy-sweep":
                return cmd_entropy_sweep(cfg)
            if args.command == "roundtrip":
                return cmd_roundtrip(cfg)
            if args.command == "kernel-check":
                return cmd_kernel_check(cfg)
            if args.command == "wigner":
                return cmd_wigner(cfg)
            return cmd_verify(cfg, args.suite, override)
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except AccuracyError as exc:
        print(f"tomokit: accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except (ConfigError, ValueError) as exc:
        print(f"tomokit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

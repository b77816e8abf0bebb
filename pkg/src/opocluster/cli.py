"""Command line interface.

Subcommands:

    threshold    print the critical pump amplitude of the configured system
    figure ID    write the reference figure data (fig2, fig3, fig5, fig6, fig7)
    sweep        write the full (theta, omega) variance grid as CSV
    matrices     export the drift and diffusion matrices as CSV
    trajectory   dump a single stochastic path (time plus 24 real components)
    validate     cross-check the analytic Jacobian and the linearized
                 covariances against independent numerical estimates

Exit codes: 0 success, 1 usage error, 2 numerical or stability failure,
3 validation failure. All CSV output is byte-deterministic for a fixed
seed: fixed float formatting, unix newlines, no timestamps.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, load_config
from .dynamics import DIM, deterministic_rhs, jacobian, ordered_basis
from .errors import OpoClusterError
from .linearize import LinearizedModel, linearize
from .operators import fixed_frequency_trace, standard_operators, sweep
from .params import SystemParams
from .sde import ensemble_covariance, integrate_trajectory, lyapunov_reference
from .steady import trivial_steady_state
from .threshold import threshold_pump

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3

CROP_LEVEL = 8.0
FD_STEP = 1e-5
FD_DRAWS = 100
FD_TOLERANCE = 1e-6
# indices of the noise-carrying low-mode block in the interleaved basis
LOW_BLOCK = slice(4, 12)

FIGURES = ("fig2", "fig3", "fig5", "fig6", "fig7")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems via exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _param_comment(params: SystemParams, seed: int | None = None, **extra) -> str:
    parts = [
        f"opocluster {__version__}",
        f"chi1={_fmt(params.chi1)}",
        f"chi2={_fmt(params.chi2)}",
        f"eps1={_fmt(params.eps1)}",
        f"eps2={_fmt(params.eps2)}",
        "gamma=" + ",".join(_fmt(g) for g in params.gamma),
    ]
    if seed is not None:
        parts.append(f"seed={seed}")
    parts.extend(f"{k}={_fmt(v)}" for k, v in extra.items())
    return "# " + " ".join(parts)


def _write_csv(path: Path, comment: str, header, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(comment + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _linearized(cfg: RunConfig) -> LinearizedModel:
    return linearize(cfg.params, trivial_steady_state(cfg.params))


def _omega_header(mhz: float | None):
    return ["omega", "omega_MHz"] if mhz else ["omega"]


def _omega_cols(w: float, mhz: float | None):
    return [w, w * mhz] if mhz else [w]


def cmd_threshold(cfg: RunConfig, args, out: Path) -> int:
    eps_c = threshold_pump(cfg.params)
    print(f"epsilon_c = {eps_c:#.4g}")
    return EXIT_OK


def _trace_rows(lin, thetas, omega, db: bool):
    trace = fixed_frequency_trace(lin, omega, thetas)
    ops = standard_operators()
    rows = []
    for i, th in enumerate(thetas):
        row = [th]
        for op in ops:
            key = op.label + "_dB" if db else op.label
            row.append(trace[key][i])
        if not db:
            row.extend([ops[0].coherent_level, ops[1].coherent_level])
        rows.append(row)
    return rows


def cmd_figure(cfg: RunConfig, args, out: Path) -> int:
    lin = _linearized(cfg)
    grid = sweep(lin, cfg.thetas, cfg.omegas)
    ops = standard_operators()
    mhz = args.mhz_scale
    path = out / f"{args.figure}.csv"

    if args.figure in ("fig2", "fig3"):
        # theta trace of all four operators at the frequency minimizing O1
        omega_star = grid.minima["O1"][1]
        db = args.figure == "fig3"
        header = ["theta"] + [
            op.label + ("_dB" if db else "") for op in ops
        ]
        if not db:
            header += ["coherent_13", "coherent_24"]
        comment = _param_comment(
            cfg.params, omega_star=omega_star,
            **({"mhz_scale": mhz} if mhz else {}),
        )
        _write_csv(path, comment, header, _trace_rows(lin, cfg.thetas, omega_star, db))
    elif args.figure in ("fig5", "fig6"):
        # full surfaces for one operator pair, raw plus display crop
        pair = ("O1", "O3") if args.figure == "fig5" else ("O2", "O4")
        header = ["theta"] + _omega_header(mhz) + list(pair) + [
            p + "_crop" for p in pair
        ]
        rows = []
        for i, th in enumerate(cfg.thetas):
            for j, w in enumerate(cfg.omegas):
                vals = [grid.values[p][i, j] for p in pair]
                rows.append(
                    [th] + _omega_cols(w, mhz) + vals
                    + [min(v, CROP_LEVEL) for v in vals]
                )
        _write_csv(path, _param_comment(cfg.params), header, rows)
    elif args.figure == "fig7":
        # summed four-operator objective at its own optimal frequency
        omega_star = grid.sum_minimum[1]
        coherent_sum = sum(op.coherent_level for op in ops)
        trace = fixed_frequency_trace(lin, omega_star, cfg.thetas)
        total = sum(trace[op.label] for op in ops)
        rows = [
            [th, total[i], 10.0 * np.log10(total[i] / coherent_sum)]
            for i, th in enumerate(cfg.thetas)
        ]
        comment = _param_comment(
            cfg.params, omega_star=omega_star, coherent_sum=coherent_sum,
            **({"mhz_scale": mhz} if mhz else {}),
        )
        _write_csv(path, comment, ["theta", "V_sum", "V_sum_dB"], rows)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args, out: Path) -> int:
    lin = _linearized(cfg)
    grid = sweep(lin, cfg.thetas, cfg.omegas)
    ops = standard_operators()
    mhz = args.mhz_scale
    header = (
        ["theta"] + _omega_header(mhz)
        + [op.label for op in ops]
        + [op.label + "_dB" for op in ops]
    )
    rows = []
    for i, th in enumerate(cfg.thetas):
        for j, w in enumerate(cfg.omegas):
            vals = [grid.values[op.label][i, j] for op in ops]
            dbs = [
                10.0 * np.log10(v / op.coherent_level)
                for v, op in zip(vals, ops)
            ]
            rows.append([th] + _omega_cols(w, mhz) + vals + dbs)
    path = out / "sweep.csv"
    _write_csv(path, _param_comment(cfg.params), header, rows)
    for op in ops:
        th, w, v = grid.minima[op.label]
        print(f"{op.label}: min V = {v:.6g} at theta = {th:.6g}, omega = {w:.6g}")
    th, w, v = grid.sum_minimum
    print(f"sum: min V = {v:.6g} at theta = {th:.6g}, omega = {w:.6g}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_matrices(cfg: RunConfig, args, out: Path) -> int:
    lin = _linearized(cfg)
    basis = ordered_basis()
    for name, M in (("drift", lin.drift), ("diffusion", lin.diffusion)):
        path = out / f"{name}.csv"
        rows = [[basis[i]] + list(M[i]) for i in range(DIM)]
        _write_csv(path, _param_comment(cfg.params), [""] + basis, rows)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_trajectory(cfg: RunConfig, args, out: Path) -> int:
    traj = integrate_trajectory(
        cfg.params, cfg.sde, with_noise=not args.no_noise,
        record_stride=cfg.sde.sample_stride,
    )
    basis = ordered_basis()
    header = ["t"]
    for b in basis:
        header += [f"re_{b}", f"im_{b}"]
    rows = []
    for i, t in enumerate(traj.times):
        row = [t]
        for k in range(DIM):
            row += [traj.values[i, k].real, traj.values[i, k].imag]
        rows.append(row)
    path = out / "trajectory.csv"
    _write_csv(path, _param_comment(cfg.params, seed=cfg.sde.seed), header, rows)
    if traj.diverged:
        print("warning: trajectory diverged and was truncated", file=sys.stderr)
    print(f"wrote {path}")
    return EXIT_OK


def _check_jacobian(params: SystemParams, inject: float) -> float:
    """Worst relative error of the analytic Jacobian against central
    finite differences over random states near the trivial branch."""
    rng = np.random.default_rng(7)
    base = trivial_steady_state(params).vector
    worst = 0.0
    for _ in range(FD_DRAWS):
        y = base + rng.normal(size=DIM) + 1j * rng.normal(size=DIM)
        J = jacobian(params, y)
        if inject:
            J = J.copy()
            J[0, 0] += inject
        fd = np.zeros_like(J)
        for k in range(DIM):
            e = np.zeros(DIM, dtype=complex)
            e[k] = FD_STEP
            fd[:, k] = (
                deterministic_rhs(params, y + e)
                - deterministic_rhs(params, y - e)
            ) / (2 * FD_STEP)
        scale = max(1.0, float(np.max(np.abs(J))))
        worst = max(worst, float(np.max(np.abs(J - fd))) / scale)
    return worst


def cmd_validate(cfg: RunConfig, args, out: Path) -> int:
    params = cfg.params.with_pump(0.5 * threshold_pump(cfg.params))
    failures = 0

    err = _check_jacobian(params, args.inject_drift_error)
    ok = err < FD_TOLERANCE
    failures += not ok
    print(f"jacobian-fd: {'pass' if ok else 'FAIL'} (max rel err {err:.3e})")

    moments = ensemble_covariance(params, cfg.sde)
    C = lyapunov_reference(params)

    ok = moments.discard_rate <= 0.05
    failures += not ok
    print(
        f"discard-rate: {'pass' if ok else 'FAIL'} "
        f"({moments.n_discarded}/{moments.n_kept + moments.n_discarded})"
    )

    dev = np.abs(moments.covariances[LOW_BLOCK, LOW_BLOCK] - C[LOW_BLOCK, LOW_BLOCK])
    se = moments.stderr_covariances[LOW_BLOCK, LOW_BLOCK]
    z = np.max(dev / np.where(se > 0, se, np.inf))
    ok = bool(np.all(dev <= 3.0 * se))
    failures += not ok
    print(f"covariance-lyapunov (low modes): {'pass' if ok else 'FAIL'} (max z {z:.2f})")

    ref = trivial_steady_state(params).vector[LOW_BLOCK]
    mdev = np.abs(moments.means[LOW_BLOCK] - ref)
    mok = bool(np.all(mdev <= 3.0 * moments.stderr_means[LOW_BLOCK]))
    failures += not mok
    print(f"means (low modes): {'pass' if mok else 'FAIL'} (max dev {mdev.max():.3e})")

    # informational only: the pump sector carries a second-order
    # fluorescence shift that no finite ensemble resolves away
    pdev = float(np.max(np.abs(moments.covariances[:4, :4] - C[:4, :4])))
    print(f"pump-sector covariance deviation (informational): {pdev:.3e}")

    return EXIT_OK if failures == 0 else EXIT_VALIDATION


def build_parser() -> _Parser:
    parser = _Parser(prog="opocluster", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", metavar="PATH", help="configuration file")
    parser.add_argument("--out", metavar="DIR", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="override RNG seed")
    parser.add_argument("--threads", type=int, default=None, help="worker threads")
    parser.add_argument(
        "--mhz-scale", type=float, default=None,
        help="append frequency columns scaled to MHz by this factor",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("threshold", help="print the critical pump amplitude")
    p_fig = sub.add_parser("figure", help="write reference figure data")
    p_fig.add_argument("figure", choices=FIGURES)
    sub.add_parser("sweep", help="write the full variance grid")
    sub.add_parser("matrices", help="export drift and diffusion matrices")
    p_traj = sub.add_parser("trajectory", help="dump a single stochastic path")
    p_traj.add_argument("--no-noise", action="store_true", help="deterministic path")
    p_val = sub.add_parser("validate", help="run the numerical cross-checks")
    p_val.add_argument(
        "--inject-drift-error", type=float, default=0.0, help=argparse.SUPPRESS
    )
    return parser


COMMANDS = {
    "threshold": cmd_threshold,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "matrices": cmd_matrices,
    "trajectory": cmd_trajectory,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = cfg.with_seed(args.seed)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".writable"
        try:
            probe.touch()
            probe.unlink()
        except OSError as exc:
            raise _UsageError(f"output directory not writable: {out}") from exc
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.threads is not None:
        import numba

        numba.set_num_threads(max(1, args.threads))
    try:
        return COMMANDS[args.command](cfg, args, out)
    except (OpoClusterError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line pipeline: generate, transform, scaling, decompose.

Exit codes: 0 success, 1 runtime failure (bad data, unwritable output),
2 usage error (unknown flags, missing files, invalid threshold lists).
All randomness is seed-controlled, so identical invocations produce
byte-identical output files. Threshold lists are plain fractions
(0.005 means 0.5%); percent strings are not accepted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import (
    EventKind,
    MoveConvention,
    ThresholdConfig,
    TickSeries,
    overshoot_lengths,
)
from .errors import IntrinsicTimeError
from .io import (
    EventFileFormat,
    TickFileSpec,
    TimestampUnit,
    _atomic_write,
    _fmt,
    parse_ticks,
    write_events,
    write_ticks,
)
from .multiscale import THREADS_ENV_VAR, run_grid, summarize
from .scaling import decompose, fit_power_law, mean_overshoot_ratio
from .synthetic import GbmParams, generate_gbm, generate_random_walk

NS_PER_SECOND = 1_000_000_000

_CONVENTIONS = {"relative": MoveConvention.RELATIVE, "log": MoveConvention.LOG_RETURN}
_UNITS = {"s": TimestampUnit.SECONDS, "ms": TimestampUnit.MILLIS,
          "ns": TimestampUnit.NANOS}


def _delta_list(text: str) -> list[float]:
    try:
        deltas = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold list {text!r}")
    if not deltas:
        raise argparse.ArgumentTypeError("threshold list is empty")
    for d in deltas:
        if not (0.0 < d < 1.0):
            raise argparse.ArgumentTypeError(
                f"threshold {d!r} must be a fraction in (0, 1)")
    if len(set(deltas)) != len(deltas):
        raise argparse.ArgumentTypeError(f"duplicate thresholds in {text!r}")
    return sorted(deltas)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intrinsic-time",
        description="Event-based intrinsic-time transforms and scaling-law "
                    "estimation for tick data.",
        epilog=f"Set {THREADS_ENV_VAR} to override the thread count used for "
               "multi-threshold runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic tick CSV")
    gen.add_argument("--model", choices=["gbm", "walk"], required=True)
    gen.add_argument("--s0", type=float, default=1.0, help="initial price")
    gen.add_argument("--mu", type=float, default=0.0, help="gbm drift per unit time")
    gen.add_argument("--sigma", type=float, default=0.0,
                     help="gbm volatility per sqrt unit time")
    gen.add_argument("--step-size", type=float, default=None,
                     help="walk log-price step (required for --model walk)")
    gen.add_argument("--steps", type=int, required=True, help="number of steps")
    gen.add_argument("--dt", type=float, default=1.0, help="seconds per step")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output tick CSV path")

    common_in = argparse.ArgumentParser(add_help=False)
    common_in.add_argument("--in", dest="input", required=True,
                           help="input tick CSV path")
    common_in.add_argument("--deltas", type=_delta_list, required=True,
                           help="comma-separated threshold fractions, e.g. "
                                "0.001,0.005,0.01")
    common_in.add_argument("--convention", choices=sorted(_CONVENTIONS),
                           default="relative")
    common_in.add_argument("--timestamp-unit", choices=sorted(_UNITS), default="ns")
    common_in.add_argument("--no-header", action="store_true",
                           help="input file has no header row")
    common_in.add_argument("--allow-unordered", action="store_true",
                           help="stably sort rows by timestamp instead of failing")

    tra = sub.add_parser("transform", parents=[common_in],
                         help="write per-threshold event files and a summary table")
    tra.add_argument("--out-dir", required=True)
    tra.add_argument("--format", choices=["csv", "jsonl"], default="csv")

    sca = sub.add_parser("scaling", parents=[common_in],
                         help="fit the DC-count power law and report overshoot ratios")
    sca.add_argument("--out", default=None, help="optional output CSV path")

    dec = sub.add_parser("decompose", parents=[common_in],
                         help="return-variance decomposition across thresholds")
    dec.add_argument("--dt-seconds", type=float, required=True,
                     help="physical sampling interval for returns")
    dec.add_argument("--out", default=None, help="optional output CSV path")

    return parser


def _read_input(args) -> TickSeries:
    path = Path(args.input)
    spec = TickFileSpec(path=path, has_header=not args.no_header,
                        timestamp_unit=_UNITS[args.timestamp_unit])
    return parse_ticks(spec, allow_unordered=args.allow_unordered)


def _cmd_generate(args) -> int:
    if args.model == "gbm":
        series = generate_gbm(GbmParams(s0=args.s0, mu=args.mu, sigma=args.sigma,
                                        dt_step=args.dt, n_steps=args.steps,
                                        seed=args.seed))
    else:
        if args.step_size is None:
            print("error: --model walk requires --step-size", file=sys.stderr)
            return 2
        series = generate_random_walk(args.s0, args.step_size, args.steps, args.seed)
    write_ticks(series, args.out)
    print(f"wrote {len(series)} ticks to {args.out}")
    return 0


def _cmd_transform(args) -> int:
    series = _read_input(args)
    convention = _CONVENTIONS[args.convention]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = EventFileFormat(args.format)
    ext = "csv" if fmt is EventFileFormat.CSV else "jsonl"

    results = run_grid(series, args.deltas, convention)
    summary_lines = ["# intrinsic-time summary-csv v1", "delta,n_dc,n_os,coastline"]
    print(f"{'delta':>10} {'n_dc':>8} {'n_os':>8} {'coastline':>12}")
    for delta, events in results:
        write_events(events, out_dir / f"events_delta_{delta:g}.{ext}", fmt)
        s = summarize(delta, events)
        summary_lines.append(
            f"{delta:g},{s.n_dc},{s.n_os},{_fmt(s.coastline)}")
        print(f"{delta:>10g} {s.n_dc:>8} {s.n_os:>8} {s.coastline:>12.6g}")
    _atomic_write(out_dir / "summary.csv", "\n".join(summary_lines) + "\n")
    return 0


def _cmd_scaling(args) -> int:
    series = _read_input(args)
    convention = _CONVENTIONS[args.convention]
    results = run_grid(series, args.deltas, convention)

    rows = []
    for delta, events in results:
        config = ThresholdConfig(delta, convention)
        omegas = overshoot_lengths(events, series, config)
        n_dc = sum(1 for ev in events if ev.kind is EventKind.DIRECTIONAL_CHANGE)
        ratio = mean_overshoot_ratio(omegas, delta) if omegas.size else float("nan")
        rows.append((delta, n_dc, ratio))

    fit = fit_power_law([(d, n) for d, n, _ in rows])
    print(f"dc-count power law: a={fit.a:.6g} b={fit.b:.6g} "
          f"r_squared={fit.r_squared:.6g} stderr_b={fit.stderr_b:.6g} "
          f"n_points={fit.n_points}")
    print(f"{'delta':>10} {'n_dc':>8} {'mean_overshoot_ratio':>22}")
    for delta, n_dc, ratio in rows:
        print(f"{delta:>10g} {n_dc:>8} {ratio:>22.6g}")

    if args.out:
        lines = [
            "# intrinsic-time scaling-csv v1",
            f"# fit a={_fmt(fit.a)} b={_fmt(fit.b)} r_squared={_fmt(fit.r_squared)}"
            f" stderr_b={_fmt(fit.stderr_b)} n_points={fit.n_points}",
            "delta,n_dc,mean_overshoot_ratio",
        ]
        lines.extend(f"{d:g},{n},{_fmt(r)}" for d, n, r in rows)
        _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_decompose(args) -> int:
    series = _read_input(args)
    convention = _CONVENTIONS[args.convention]
    dt = int(round(args.dt_seconds * NS_PER_SECOND))
    report = decompose(series, args.deltas, dt, convention)

    cv = "nan" if report.ratio_cv is None else f"{report.ratio_cv:.6g}"
    print(f"lhs (squared-mean return at dt={args.dt_seconds:g}s): {report.lhs:.6g}")
    print(f"ratio_cv across thresholds: {cv}")
    if report.degenerate:
        print("warning: degenerate input (no usable rows or zero return variance)")
    print(f"{'delta':>10} {'n_dc':>8} {'os_variability':>16} {'rhs':>12} {'ratio':>12}")
    for row in report.rows:
        osv = "-" if row.os_variability is None else f"{row.os_variability:.6g}"
        rhs = "-" if row.rhs is None else f"{row.rhs:.6g}"
        ratio = "-" if row.ratio is None else f"{row.ratio:.6g}"
        flag = "  (insufficient)" if row.insufficient else ""
        print(f"{row.delta:>10g} {row.n_dc:>8} {osv:>16} {rhs:>12} {ratio:>12}{flag}")

    if args.out:
        lines = [
            "# intrinsic-time decomposition-csv v1",
            f"# lhs={_fmt(report.lhs)} ratio_cv="
            f"{'nan' if report.ratio_cv is None else _fmt(report.ratio_cv)}"
            f" degenerate={str(report.degenerate).lower()}",
            "delta,os_variability,n_dc,rhs,ratio,insufficient",
        ]
        for row in report.rows:
            osv = "" if row.os_variability is None else _fmt(row.os_variability)
            rhs = "" if row.rhs is None else _fmt(row.rhs)
            ratio = "" if row.ratio is None else _fmt(row.ratio)
            lines.append(f"{row.delta:g},{osv},{row.n_dc},{rhs},{ratio},"
                         f"{str(row.insufficient).lower()}")
        _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "transform": _cmd_transform,
    "scaling": _cmd_scaling,
    "decompose": _cmd_decompose,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "input", None) is not None and not Path(args.input).is_file():
        print(f"error: input file not found: {args.input}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except (IntrinsicTimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

"""Command-line interface.

Subcommands: kernel, generate, analyze corr, analyze dfa, surrogate,
experiment.  All file outputs are deterministic for a given invocation,
so repeated runs are byte-identical.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .correlation import autocorr, crosscorr, log_lags
from .dfa import dfa
from .errors import ConfigError, StabilityError
from .experiments import (
    PRESET_NAMES,
    config_from_entries,
    load_config,
    make_config,
    run_experiment,
)
from .generators import GenParams, generate
from .kernel import build_kernel
from .surrogate import SurrogateSpec, surrogate_pair


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fraccouple",
        description="Coupled long-range correlated time series: generation "
                    "and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="dump fractional weights a_n to CSV")
    p.add_argument("--d", type=float, required=True, help="scaling parameter")
    p.add_argument("--len", type=int, required=True, dest="length",
                   help="truncation length L")
    p.add_argument("--out", required=True, help="output CSV (n,a_n)")

    p = sub.add_parser("generate", help="generate a series or coupled pair")
    p.add_argument("--process", required=True,
                   choices=["arfima", "arfima2", "fiarch", "fiarch2"])
    p.add_argument("--d", type=float, help="scaling parameter (single processes)")
    p.add_argument("--d1", type=float, help="x scaling parameter (coupled)")
    p.add_argument("--d2", type=float, help="y scaling parameter (coupled)")
    p.add_argument("--w", type=float, help="coupling strength")
    p.add_argument("--n", type=int, required=True, help="output length")
    p.add_argument("--len", type=int, default=10_000, dest="length",
                   help="kernel truncation L (default 10000)")
    p.add_argument("--burn-in", type=int, default=None,
                   help="discarded prefix (default max(L, min(10L, 1e5)))")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-full-w", action="store_true",
                   help="accept coupling w in [0, 1] instead of [0.5, 1]")
    p.add_argument("--out", required=True, help="output CSV (t,x[,y])")

    analyze = sub.add_parser("analyze", help="estimate correlations or DFA")
    asub = analyze.add_subparsers(dest="analysis", required=True)

    p = asub.add_parser("corr", help="auto/cross-correlation over a lag grid")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--cols", default="x",
                   help="one column (auto) or two comma-separated (cross)")
    p.add_argument("--abs", action="store_true", help="correlate absolute values")
    p.add_argument("--lags", default=None,
                   help="log:LO:HI[:PER_DECADE] or lin:LO:HI[:STEP] "
                        "(default log:1:N/100)")
    p.add_argument("--out", required=True, help="output CSV (n,value,n_samples)")

    p = asub.add_parser("dfa", help="detrended fluctuation analysis")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--col", default="x")
    p.add_argument("--abs", action="store_true", help="analyze absolute values")
    p.add_argument("--order", type=int, default=1, help="detrending order 1..3")
    p.add_argument("--out", required=True,
                   help="output CSV (n,F); alpha goes to <out>.summary.json")

    p = sub.add_parser("surrogate", help="Fourier phase-randomization surrogate")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--mode", default="independent",
                   choices=["independent", "shared_shuffle"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV, same schema as input")

    p = sub.add_parser("experiment", help="run a parameter-sweep experiment")
    p.add_argument("--preset", choices=list(PRESET_NAMES))
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--ensemble", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--len", type=int, default=None, dest="length")
    p.add_argument("--burn-in", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--surrogates", type=int, default=None,
                   help="phase draws averaged per run")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--keep-runs", action="store_true",
                   help="write per-run series CSVs under runs/")
    p.add_argument("--allow-full-w", action="store_true")
    p.add_argument("--out", default=None, help="output directory")

    return parser


def _parse_lag_spec(spec, n):
    if spec is None:
        return log_lags(1, max(1, n // 100))
    parts = spec.split(":")
    kind = parts[0].lower()
    try:
        if kind == "log":
            lo, hi = int(parts[1]), int(parts[2])
            per_decade = int(parts[3]) if len(parts) > 3 else 25
            return log_lags(lo, hi, per_decade)
        if kind == "lin":
            lo, hi = int(parts[1]), int(parts[2])
            step = int(parts[3]) if len(parts) > 3 else 1
            return np.arange(lo, hi + 1, step, dtype=np.int64)
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad lag spec {spec!r}: {exc}") from exc
    raise ValueError(f"bad lag spec {spec!r}: expected log:... or lin:...")


def _cmd_kernel(args):
    kern = build_kernel(args.d, args.length)
    with open(args.out, "w") as fh:
        fh.write("n,a_n\n")
        for i, w in enumerate(kern.weights, start=1):
            fh.write(f"{i},{io.FLOAT_FMT % w}\n")
    return 0


def _cmd_generate(args):
    coupled = args.process in ("arfima2", "fiarch2")
    if coupled:
        if args.d1 is None or args.d2 is None or args.w is None:
            raise ValueError(f"{args.process} needs --d1, --d2 and --w")
        d1, d2, w = args.d1, args.d2, args.w
    else:
        if args.d is None:
            raise ValueError(f"{args.process} needs --d")
        if args.d1 is not None or args.d2 is not None or args.w is not None:
            raise ValueError(f"{args.process} takes --d only (not --d1/--d2/--w)")
        d1, d2, w = args.d, None, None
    params = GenParams(process=args.process, d1=d1, d2=d2, w=w, n=args.n,
                       L=args.length, burn_in=args.burn_in, seed=args.seed)
    pair = generate(params, allow_full_w=args.allow_full_w)
    io.write_pair_csv(args.out, pair.x, pair.y)
    io.write_meta(io.meta_path_for(args.out), io.pair_metadata(pair))
    return 0


def _cmd_corr(args):
    names = [c.strip() for c in args.cols.split(",") if c.strip()]
    if len(names) not in (1, 2):
        raise ValueError(f"--cols takes one or two column names, got {args.cols!r}")
    table = io.read_columns(args.infile, names)
    series = [table[name] for name in names]
    if args.abs:
        series = [np.abs(s) for s in series]
    transform = "absolute" if args.abs else "raw"
    lags = _parse_lag_spec(args.lags, series[0].shape[0])
    if len(names) == 1:
        result = autocorr(series[0], lags, transform=transform)
    else:
        result = crosscorr(series[0], series[1], lags, transform=transform)
    with open(args.out, "w") as fh:
        fh.write("n,value,n_samples\n")
        for lag, val, cnt in zip(result.lags, result.values, result.n_samples):
            fh.write(f"{int(lag)},{io.FLOAT_FMT % val},{int(cnt)}\n")
    return 0


def _cmd_dfa(args):
    table = io.read_columns(args.infile, [args.col])
    x = table[args.col]
    if args.abs:
        x = np.abs(x)
    result = dfa(x, order=args.order)
    with open(args.out, "w") as fh:
        fh.write("n,F\n")
        for n, f in zip(result.window_sizes, result.fluctuations):
            fh.write(f"{int(n)},{io.FLOAT_FMT % f}\n")
    summary_path = Path(args.out).with_name(Path(args.out).stem + ".summary.json")
    with open(summary_path, "w") as fh:
        json.dump(
            {
                "alpha": result.alpha,
                "stderr": result.fit_stderr,
                "fit_min": result.fit_range[0],
                "fit_max": result.fit_range[1],
                "order": result.order,
            },
            fh, indent=2, sort_keys=True,
        )
        fh.write("\n")
    return 0


def _cmd_surrogate(args):
    table = io.read_columns(args.infile, ["x"])
    y = table.get("y")
    pair = _table_pair(table["x"], y)
    spec = SurrogateSpec(mode=args.mode, seed=args.seed)
    surr = surrogate_pair(pair, spec)
    io.write_pair_csv(args.out, surr.x, surr.y)
    io.write_meta(
        io.meta_path_for(args.out),
        {
            "surrogate": True,
            "mode": args.mode,
            "seed": args.seed,
            "source": str(args.infile),
            "n": int(surr.x.shape[0]),
        },
    )
    return 0


def _table_pair(x, y):
    from .generators import SeriesPair

    params = GenParams(process="arfima", d1=0.0, n=x.shape[0], L=1, burn_in=1)
    return SeriesPair(x=x, y=y, params=params)


def _cmd_experiment(args):
    if args.config:
        config = load_config(args.config)
    elif args.preset:
        config = make_config(args.preset)
    else:
        raise ConfigError("experiment needs --preset or --config")

    overrides = {}
    if args.preset and args.config:
        raise ConfigError("give either --preset or --config, not both")
    for field, value in (
        ("ensemble", args.ensemble), ("n", args.n), ("L", args.length),
        ("burn_in", args.burn_in), ("master_seed", args.seed),
        ("n_surrogates", args.surrogates), ("output_dir", args.out),
    ):
        if value is not None:
            overrides[field] = value
    if args.allow_full_w:
        overrides["allow_full_w"] = True
    if overrides:
        points = [
            gp.d1 if gp.d2 is None else (gp.d1, gp.d2, gp.w)
            for gp in config.grid
        ]
        config = make_config(
            config.figure if config.figure != "custom" else None,
            process=config.grid[0].process,
            points=points,
            analysis=config.analysis,
            n=overrides.get("n", config.n),
            L=overrides.get("L", config.L),
            burn_in=overrides.get("burn_in", config.burn_in),
            ensemble=overrides.get("ensemble", config.ensemble),
            master_seed=overrides.get("master_seed", config.master_seed),
            n_surrogates=overrides.get("n_surrogates", config.n_surrogates),
            allow_full_w=overrides.get("allow_full_w", config.allow_full_w),
            output_dir=overrides.get("output_dir", config.output_dir),
        )

    result = run_experiment(config, jobs=args.jobs, keep_runs=args.keep_runs)
    n_rows = len(result.summary)
    print(f"wrote {result.output_dir}/summary.csv ({n_rows} rows)")
    if not result.ok:
        print(f"{len(result.errors)} run(s) failed; see "
              f"{result.output_dir}/errors.log", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "kernel": _cmd_kernel,
    "generate": _cmd_generate,
    "surrogate": _cmd_surrogate,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            handler = _cmd_corr if args.analysis == "corr" else _cmd_dfa
        else:
            handler = _COMMANDS[args.command]
        return handler(args)
    except (ValueError, ConfigError, StabilityError, OSError) as exc:
        print(f"fraccouple {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Declarative experiment runner: parameter sweeps over seed ensembles.

A config names a figure preset (fig1..fig5) or a custom grid, the
ensemble size, the common generation sizes, and which analyses to run.
Each grid point x seed is generated and analyzed independently (a
process pool when jobs > 1); scalar statistics are aggregated into
``summary.csv`` and ensemble-mean curves into ``curves/``.

Seed derivation (stable, documented): the seed of run (grid point g,
repetition r) is ``SeedSequence([master_seed, g, r]).generate_state(1,
uint64)[0]``; surrogate phase seeds append a trailing 1 to the entropy
list.  Two runs of the same config therefore produce byte-identical
outputs.

Config grammar: ``key = value`` lines, ``#`` comments.  Keys: preset,
process, d, d1, d2, w, n, len, burn_in, seed, ensemble, surrogates,
analysis, allow_full_w, out, grid.  d/d1/d2/w accept comma lists and
sweep their cross product; ``grid`` instead lists explicit points
(``d1 d2 w`` triples, or single d values, separated by ';') and wins
over the list keys.  Unknown keys are rejected.
"""

import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import io
from .correlation import autocorr, crosscorr, log_lags, null_band
from .dfa import dfa
from .errors import ConfigError
from .generators import GenParams, generate, validate_params
from .surrogate import SurrogateSpec, surrogate_pairs

__all__ = [
    "ANALYSES",
    "PRESET_NAMES",
    "ExperimentConfig",
    "ExperimentResult",
    "SummaryRow",
    "derive_seed",
    "load_config",
    "make_config",
    "run_experiment",
]

ANALYSES = ("corr", "dfa", "surrogate")

DEFAULT_N = 2**17
DEFAULT_L = 10_000
DEFAULT_BURN_IN = 50_000
DEFAULT_ENSEMBLE = 10
DEFAULT_MASTER_SEED = 12345
DEFAULT_SURROGATES = 32

# figure presets: process, (d1, d2, w) grid points, analyses
_PRESETS = {
    "fig1": ("arfima2", [(0.4, 0.4, 0.8), (0.3, 0.3, 0.8)], ("corr",)),
    "fig2": ("arfima2", [(0.4, 0.4, 0.8)], ("corr", "surrogate")),
    "fig3": ("arfima2", [(0.4, 0.4, w) for w in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)],
             ("corr",)),
    "fig4": ("arfima2", [(0.4, 0.1, w) for w in (1.0, 0.9, 0.7, 0.5)], ("dfa",)),
    "fig5": ("fiarch2", [(0.4, 0.1, w) for w in (1.0, 0.9, 0.7, 0.5)], ("dfa",)),
}
PRESET_NAMES = tuple(_PRESETS)


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment description (grid seeds are filled per run)."""

    figure: str
    grid: tuple[GenParams, ...]
    ensemble: int
    n: int
    L: int
    burn_in: int
    analysis: tuple[str, ...]
    output_dir: str
    master_seed: int = DEFAULT_MASTER_SEED
    n_surrogates: int = DEFAULT_SURROGATES
    allow_full_w: bool = False


@dataclass
class SummaryRow:
    grid_index: int
    params: GenParams
    statistic: str
    mean: float
    stderr: float
    n_runs: int


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    summary: list
    errors: list
    output_dir: Path

    @property
    def ok(self) -> bool:
        return not self.errors

    def stat(self, grid_index: int, statistic: str) -> float:
        for row in self.summary:
            if row.grid_index == grid_index and row.statistic == statistic:
                return row.mean
        raise KeyError(f"no statistic {statistic!r} for grid point {grid_index}")


def derive_seed(*entropy) -> int:
    """Stable per-run seed from integer components (master, grid, rep, ...)."""
    ss = np.random.SeedSequence([int(e) for e in entropy])
    return int(ss.generate_state(1, np.uint64)[0])


def _coerce_grid_points(process, points, n, L, burn_in):
    grid = []
    for pt in points:
        if isinstance(pt, (int, float)):
            pt = (float(pt), None, None)
        d1, d2, w = pt
        grid.append(GenParams(process=process, d1=d1, d2=d2, w=w,
                              n=n, L=L, burn_in=burn_in, seed=0))
    return tuple(grid)


def make_config(preset=None, *, process=None, points=None, analysis=None,
                n=DEFAULT_N, L=DEFAULT_L, burn_in=DEFAULT_BURN_IN,
                ensemble=DEFAULT_ENSEMBLE, master_seed=DEFAULT_MASTER_SEED,
                n_surrogates=DEFAULT_SURROGATES, allow_full_w=False,
                output_dir="results") -> ExperimentConfig:
    """Build a validated config from a preset and/or explicit pieces.

    Explicit process/points/analysis override the preset's choices.
    ``points`` holds (d1, d2, w) tuples for coupled processes or bare d
    values for single-component ones.
    """
    figure = preset or "custom"
    if preset is not None:
        if preset not in _PRESETS:
            raise ConfigError(
                f"preset: unknown name {preset!r} (have {', '.join(PRESET_NAMES)})"
            )
        p_process, p_points, p_analysis = _PRESETS[preset]
        process = process or p_process
        points = points if points is not None else p_points
        analysis = analysis if analysis is not None else p_analysis
    if process is None or points is None:
        raise ConfigError("custom experiments need a process and grid points")
    if analysis is None:
        analysis = ("corr",)

    config = ExperimentConfig(
        figure=figure,
        grid=_coerce_grid_points(process, points, int(n), int(L), int(burn_in)),
        ensemble=int(ensemble),
        n=int(n), L=int(L), burn_in=int(burn_in),
        analysis=tuple(analysis),
        output_dir=str(output_dir),
        master_seed=int(master_seed),
        n_surrogates=int(n_surrogates),
        allow_full_w=bool(allow_full_w),
    )
    return validate_config(config)


def validate_config(config: ExperimentConfig) -> ExperimentConfig:
    if config.ensemble < 1:
        raise ConfigError(f"ensemble: must be >= 1, got {config.ensemble}")
    if config.n_surrogates < 1:
        raise ConfigError(f"surrogates: must be >= 1, got {config.n_surrogates}")
    unknown = [a for a in config.analysis if a not in ANALYSES]
    if unknown:
        raise ConfigError(f"analysis: unknown {unknown}, choose from {ANALYSES}")
    if "surrogate" in config.analysis and "corr" not in config.analysis:
        raise ConfigError("analysis: surrogate requires corr")
    if not config.grid:
        raise ConfigError("grid: no grid points")
    for gp in config.grid:
        try:
            validate_params(gp, allow_full_w=config.allow_full_w)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return config


# ---------------------------------------------------------------------------
# config file parsing

_LIST_KEYS = {"d", "d1", "d2", "w"}
_KNOWN_KEYS = _LIST_KEYS | {
    "preset", "figure", "process", "n", "len", "burn_in", "seed",
    "ensemble", "surrogates", "analysis", "allow_full_w", "out", "grid",
}


def _parse_scalar(key, raw, line_no, cast):
    try:
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"line {line_no}: {key}: cannot parse {raw!r}") from exc


def _parse_bool(raw):
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(raw)


def load_config(path) -> ExperimentConfig:
    """Parse and validate a key = value config file."""
    entries = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigError(
                    f"line {line_no}: expected 'key = value', got {text!r}"
                )
            key, raw = (part.strip() for part in text.split("=", 1))
            key = key.lower()
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"line {line_no}: unknown key {key!r}")
            if key in entries:
                raise ConfigError(f"line {line_no}: duplicate key {key!r}")
            entries[key] = (raw, line_no)
    return config_from_entries(entries)


def config_from_entries(entries: dict) -> ExperimentConfig:
    def take(key, default=None):
        return entries.pop(key, (default, 0))

    preset_raw, _ = take("preset")
    figure_raw, _ = take("figure")
    preset = preset_raw or figure_raw
    process_raw, _ = take("process")

    kwargs = {}
    for key, cast, name in (
        ("n", int, "n"), ("len", int, "L"), ("burn_in", int, "burn_in"),
        ("seed", int, "master_seed"), ("ensemble", int, "ensemble"),
        ("surrogates", int, "n_surrogates"),
    ):
        raw, line_no = take(key)
        if raw is not None:
            kwargs[name] = _parse_scalar(key, raw, line_no, cast)
    raw, line_no = take("allow_full_w")
    if raw is not None:
        kwargs["allow_full_w"] = _parse_scalar("allow_full_w", raw, line_no,
                                               _parse_bool)
    raw, _ = take("out")
    if raw is not None:
        kwargs["output_dir"] = raw
    raw, _ = take("analysis")
    if raw is not None:
        kwargs["analysis"] = tuple(a.strip() for a in raw.split(",") if a.strip())

    grid_raw, grid_line = take("grid")
    lists = {}
    for key in sorted(_LIST_KEYS):
        raw, line_no = take(key)
        if raw is not None:
            lists[key] = [
                _parse_scalar(key, item.strip(), line_no, float)
                for item in raw.split(",") if item.strip()
            ]

    points = None
    if grid_raw is not None:
        points = _parse_grid_points(grid_raw, grid_line)
    elif lists:
        points = _cross_product_points(lists)

    return make_config(preset, process=process_raw, points=points, **kwargs)


def _parse_grid_points(raw, line_no):
    points = []
    for chunk in raw.split(";"):
        fields = chunk.split()
        if not fields:
            continue
        vals = [_parse_scalar("grid", f, line_no, float) for f in fields]
        if len(vals) == 1:
            points.append(vals[0])
        elif len(vals) == 3:
            points.append(tuple(vals))
        else:
            raise ConfigError(
                f"line {line_no}: grid: each point is one d value or a "
                f"'d1 d2 w' triple, got {chunk.strip()!r}"
            )
    if not points:
        raise ConfigError(f"line {line_no}: grid: no points")
    return points


def _cross_product_points(lists):
    if "d" in lists:
        if len(lists) > 1:
            raise ConfigError("d: cannot combine with d1/d2/w (single-component)")
        return list(lists["d"])
    d1s = lists.get("d1", [None])
    d2s = lists.get("d2", [None])
    ws = lists.get("w", [None])
    return [(d1, d2, w) for d1 in d1s for d2 in d2s for w in ws]


def dump_config(config: ExperimentConfig) -> str:
    """Effective config in the same grammar load_config reads."""
    lines = [
        f"figure = {config.figure}",
        f"process = {config.grid[0].process}",
        f"n = {config.n}",
        f"len = {config.L}",
        f"burn_in = {config.burn_in}",
        f"ensemble = {config.ensemble}",
        f"seed = {config.master_seed}",
        f"surrogates = {config.n_surrogates}",
        f"allow_full_w = {str(config.allow_full_w).lower()}",
        f"analysis = {','.join(config.analysis)}",
        f"out = {config.output_dir}",
    ]
    pts = []
    for gp in config.grid:
        if gp.d2 is None:
            pts.append(io.FLOAT_FMT % gp.d1)
        else:
            pts.append(" ".join(io.FLOAT_FMT % v for v in (gp.d1, gp.d2, gp.w)))
    lines.append(f"grid = {' ; '.join(pts)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# execution

def _analysis_lags(n):
    return log_lags(1, max(1, n // 100))


def _run_task(args):
    """One grid point x repetition; returns (gi, ri, stats, curves, error)."""
    config, gi, ri, keep_runs = args
    try:
        gp = config.grid[gi]
        seed = derive_seed(config.master_seed, gi, ri)
        params = replace(gp, seed=seed)
        pair = generate(params, allow_full_w=config.allow_full_w)
        take_abs = params.process.startswith("fiarch")
        stats = {}
        curves = {}

        if pair.sigma_mean_x is not None:
            stats["sigma_mean_x"] = pair.sigma_mean_x
        if pair.sigma_mean_y is not None:
            stats["sigma_mean_y"] = pair.sigma_mean_y

        if keep_runs:
            run_dir = Path(config.output_dir) / "runs"
            csv = run_dir / f"gp{gi:02d}_r{ri:03d}.csv"
            io.write_pair_csv(csv, pair.x, pair.y)
            io.write_meta(io.meta_path_for(csv), io.pair_metadata(pair))

        def lag_stat(name, corr_fn, lag):
            if np.any(corr_fn.lags == lag):
                stats[name] = corr_fn.at(lag)

        if "corr" in config.analysis:
            lags = _analysis_lags(config.n)
            transform = "absolute" if take_abs else "raw"
            x = np.abs(pair.x) if take_abs else pair.x
            ax = autocorr(x, lags, transform=transform)
            curves["A_x"] = ax.values
            lag_stat("A_x_at_lag_10", ax, 10)
            if pair.y is not None:
                y = np.abs(pair.y) if take_abs else pair.y
                ay = autocorr(y, lags, transform=transform)
                cc = crosscorr(x, y, lags, transform=transform)
                curves["A_y"] = ay.values
                curves["C"] = cc.values
                lag_stat("A_y_at_lag_10", ay, 10)
                lag_stat("C_at_lag_10", cc, 10)
                lag_stat("C_at_lag_100", cc, 100)
                stats["frac_C_in_band"] = float(
                    np.mean(np.abs(cc.values) < null_band(config.n))
                )

        if "surrogate" in config.analysis and pair.y is not None:
            lags = _analysis_lags(config.n)
            transform = "absolute" if take_abs else "raw"
            spec = SurrogateSpec(
                mode="independent",
                seed=derive_seed(config.master_seed, gi, ri, 1),
                n_surrogates=config.n_surrogates,
            )
            surr_curves = []
            for surr in surrogate_pairs(pair, spec):
                sx = np.abs(surr.x) if take_abs else surr.x
                sy = np.abs(surr.y) if take_abs else surr.y
                surr_curves.append(crosscorr(sx, sy, lags,
                                             transform=transform).values)
            mean_curve = np.mean(surr_curves, axis=0)
            curves["C_surr"] = mean_curve
            hits = np.nonzero(lags == 10)[0]
            if hits.size:
                stats["C_surr_at_lag_10"] = float(mean_curve[hits[0]])
            stats["frac_C_surr_in_band"] = float(
                np.mean(np.abs(mean_curve) < null_band(config.n))
            )

        if "dfa" in config.analysis:
            x = np.abs(pair.x) if take_abs else pair.x
            rx = dfa(x)
            curves["F_x"] = rx.fluctuations
            stats["alpha_x"] = rx.alpha
            if pair.y is not None:
                y = np.abs(pair.y) if take_abs else pair.y
                ry = dfa(y, windows=rx.window_sizes)
                curves["F_y"] = ry.fluctuations
                stats["alpha_y"] = ry.alpha

        return gi, ri, stats, curves, None
    except Exception:
        return gi, ri, None, None, traceback.format_exc(limit=8)


def _curve_axis(config, name):
    if name.startswith(("A_", "C")):
        return "n", _analysis_lags(config.n)
    from .dfa import default_windows
    return "n", default_windows(config.n)


def run_experiment(config: ExperimentConfig, jobs: int = 1,
                   keep_runs: bool = False) -> ExperimentResult:
    """Run every grid point x repetition, writing outputs under output_dir.

    A failing run is recorded in errors.log and skips its grid point's
    aggregation rows for the failed repetition; other runs continue.
    Output files: summary.csv, effective-config.txt, curves/*.csv,
    errors.log, and runs/*.csv when keep_runs is set.
    """
    config = validate_config(config)
    out_dir = Path(config.output_dir)
    (out_dir / "curves").mkdir(parents=True, exist_ok=True)
    if keep_runs:
        (out_dir / "runs").mkdir(parents=True, exist_ok=True)

    (out_dir / "effective-config.txt").write_text(dump_config(config))

    tasks = [
        (config, gi, ri, keep_runs)
        for gi in range(len(config.grid))
        for ri in range(config.ensemble)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_task, tasks))
    else:
        outcomes = [_run_task(t) for t in tasks]
    outcomes.sort(key=lambda o: (o[0], o[1]))

    errors = []
    per_gp_stats = {gi: {} for gi in range(len(config.grid))}
    per_gp_curves = {gi: {} for gi in range(len(config.grid))}
    for gi, ri, stats, curves, err in outcomes:
        if err is not None:
            errors.append(f"gp{gi:02d} rep{ri:03d}:\n{err}")
            continue
        for name, value in stats.items():
            per_gp_stats[gi].setdefault(name, []).append(value)
        for name, values in curves.items():
            per_gp_curves[gi].setdefault(name, []).append(values)

    (out_dir / "errors.log").write_text(
        "\n".join(errors) + ("\n" if errors else "")
    )

    summary = []
    for gi in range(len(config.grid)):
        for name in sorted(per_gp_stats[gi]):
            vals = np.asarray(per_gp_stats[gi][name], dtype=np.float64)
            stderr = (
                float(vals.std(ddof=1) / np.sqrt(vals.size))
                if vals.size > 1 else 0.0
            )
            summary.append(SummaryRow(
                grid_index=gi, params=config.grid[gi], statistic=name,
                mean=float(vals.mean()), stderr=stderr, n_runs=int(vals.size),
            ))

    _write_summary(out_dir / "summary.csv", summary)
    for gi, curve_map in per_gp_curves.items():
        for name, rows in curve_map.items():
            stack = np.asarray(rows, dtype=np.float64)
            axis_name, axis = _curve_axis(config, name)
            mean = stack.mean(axis=0)
            stderr = (
                stack.std(axis=0, ddof=1) / np.sqrt(stack.shape[0])
                if stack.shape[0] > 1 else np.zeros_like(mean)
            )
            path = out_dir / "curves" / f"gp{gi:02d}_{name}.csv"
            with open(path, "w") as fh:
                fh.write(f"{axis_name},mean,stderr\n")
                for a, m, s in zip(axis, mean, stderr):
                    fh.write(f"{int(a)},{io.FLOAT_FMT % m},{io.FLOAT_FMT % s}\n")

    return ExperimentResult(config=config, summary=summary, errors=errors,
                            output_dir=out_dir)


def _write_summary(path, summary) -> None:
    with open(path, "w") as fh:
        fh.write(
            "grid_index,process,d1,d2,w,n,L,burn_in,statistic,mean,stderr,n_runs\n"
        )
        for row in summary:
            gp = row.params
            d2 = "" if gp.d2 is None else io.FLOAT_FMT % gp.d2
            w = "" if gp.w is None else io.FLOAT_FMT % gp.w
            fh.write(
                f"{row.grid_index},{gp.process},{io.FLOAT_FMT % gp.d1},{d2},{w},"
                f"{gp.n},{gp.L},{gp.burn_in},{row.statistic},"
                f"{io.FLOAT_FMT % row.mean},{io.FLOAT_FMT % row.stderr},"
                f"{row.n_runs}\n"
            )

"""CSV and sidecar-JSON input/output.

Series files carry a ``t,x`` or ``t,x,y`` header with t starting at 1;
values are written with 17 significant digits so floats round-trip
exactly and repeated runs are byte-identical.  Each generated file gets
a ``<stem>.meta.json`` sidecar describing how it was produced.
"""

import json
from pathlib import Path

import numpy as np

__all__ = [
    "FLOAT_FMT",
    "meta_path_for",
    "pair_metadata",
    "read_columns",
    "write_meta",
    "write_pair_csv",
]

FLOAT_FMT = "%.17g"


def meta_path_for(csv_path) -> Path:
    """pair.csv -> pair.meta.json (next to the data file)."""
    p = Path(csv_path)
    return p.with_name(p.stem + ".meta.json")


def write_pair_csv(path, x, y=None) -> None:
    x = np.asarray(x, dtype=np.float64)
    cols = [np.arange(1, x.shape[0] + 1), x]
    header = "t,x"
    if y is not None:
        y = np.asarray(y, dtype=np.float64)
        if y.shape != x.shape:
            raise ValueError(f"component length mismatch: {x.shape} vs {y.shape}")
        cols.append(y)
        header = "t,x,y"
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in zip(*cols):
            t = int(row[0])
            vals = ",".join(FLOAT_FMT % v for v in row[1:])
            fh.write(f"{t},{vals}\n")


def read_columns(path, names=None) -> dict:
    """Read a header CSV into {column name: float array}.

    With ``names`` given, missing columns raise a ValueError naming them.
    """
    with open(path) as fh:
        header = fh.readline().strip()
    if not header:
        raise ValueError(f"{path}: empty file")
    cols = [c.strip() for c in header.split(",")]
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(cols):
        raise ValueError(
            f"{path}: header names {len(cols)} columns but rows have "
            f"{data.shape[1]}"
        )
    table = {name: data[:, i] for i, name in enumerate(cols)}
    if names is not None:
        missing = [n for n in names if n not in table]
        if missing:
            raise ValueError(
                f"{path}: missing column(s) {missing}; file has {cols}"
            )
    return table


def write_meta(path, mapping: dict) -> None:
    with open(path, "w") as fh:
        json.dump(mapping, fh, indent=2, sort_keys=True)
        fh.write("\n")


def pair_metadata(pair) -> dict:
    """Sidecar content for a generated SeriesPair."""
    p = pair.params
    meta = {
        "process": p.process,
        "d1": p.d1,
        "d2": p.d2,
        "w": p.w,
        "n": p.n,
        "L": p.L,
        "burn_in": p.burn_in,
        "seed": p.seed,
        "tail_mass_1": pair.tail_mass_1,
        "tail_mass_2": pair.tail_mass_2,
        "mu_x": pair.mu_x,
        "mu_y": pair.mu_y,
        "sigma_mean_x": pair.sigma_mean_x,
        "sigma_mean_y": pair.sigma_mean_y,
        "surrogate": pair.surrogate,
        "rng": "numpy PCG64; SeedSequence(seed).spawn(2) -> (x, y) streams",
    }
    return meta

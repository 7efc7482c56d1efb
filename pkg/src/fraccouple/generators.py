"""Generators for the four coupled long-memory processes.

Processes
---------
arfima    x_t = sum_n a_n(d) x_{t-n} + eps_t
arfima2   coupled pair: each component's memory term mixes both components
          with coupling weight w (w = 1 decouples the pair exactly)
fiarch    x_t = sigma_t eps_t with sigma_t a unit-mass weighted sum of
          normalized past |x| (the truncated weight tail enters as a
          constant at its unconditional mean, keeping the feedback
          fractional rather than unit-root)
fiarch2   coupled pair driven by composite volatilities

Reproducibility
---------------
Innovations are Gaussian variates from numpy's PCG64 generator.  A run
seed is expanded as SeedSequence(seed).spawn(2); child 0 drives the x
innovations and child 1 the y innovations.  Single-component processes
consume child 0, so a coupled run at w = 1 is bit-identical to the two
single runs on the same seed.  All lagged values before the first step
are zero (ARFIMA) or the innovation absolute mean sqrt(2/pi) (FIARCH,
where a zero history would be a fixed point); at least ``burn_in >= L``
initial samples are discarded.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import backend
from .errors import StabilityError
from .kernel import build_kernel

__all__ = [
    "GenParams",
    "SeriesPair",
    "PROCESSES",
    "default_burn_in",
    "innovation_streams",
    "gen_arfima",
    "gen_arfima2",
    "gen_fiarch",
    "gen_fiarch2",
    "generate",
]

PROCESSES = ("arfima", "arfima2", "fiarch", "fiarch2")

#: Mean of |eps| for unit Gaussian innovations; seeds the FIARCH running mean.
INIT_ABS_MEAN = math.sqrt(2.0 / math.pi)

#: Composite-volatility running mean must stay inside this range (fiarch2).
STABILITY_RANGE = (0.5, 2.0)
STABILITY_CHECK_INTERVAL = 4096

DEFAULT_L = 10_000


def default_burn_in(L: int) -> int:
    """Default discarded prefix: 10*L capped at 1e5, never below L."""
    return max(int(L), min(10 * int(L), 100_000))


@dataclass(frozen=True)
class GenParams:
    """Parameter set for one generation run.

    d2 and w are None for the single-component processes.
    """

    process: str
    d1: float
    d2: float | None = None
    w: float | None = None
    n: int = 131_072
    L: int = DEFAULT_L
    burn_in: int | None = None
    seed: int = 0

    def resolved(self) -> "GenParams":
        """Fill in the default burn-in."""
        if self.burn_in is None:
            return replace(self, burn_in=default_burn_in(self.L))
        return self

    @property
    def coupled(self) -> bool:
        return self.process in ("arfima2", "fiarch2")


@dataclass
class SeriesPair:
    """Generated series plus run metadata.

    y is None for single-component processes.  mu_* are the realized
    means of |x_t| / |y_t| and sigma_mean_* the realized means of the
    (composite) volatility over the kept samples; both are None for
    ARFIMA processes.  tail_mass_1/2 record the truncated kernel mass
    for the d1/d2 kernels.
    """

    x: np.ndarray
    y: np.ndarray | None
    params: GenParams
    mu_x: float | None = None
    mu_y: float | None = None
    sigma_mean_x: float | None = None
    sigma_mean_y: float | None = None
    tail_mass_1: float | None = None
    tail_mass_2: float | None = None
    surrogate: bool = False


def validate_params(params: GenParams, allow_full_w: bool = False) -> GenParams:
    """Check a parameter set, returning it with defaults resolved.

    Raises ValueError naming the offending field.  With allow_full_w the
    coupling range widens from [0.5, 1] to [0, 1] (values below 0.5 warn).
    """
    p = params.resolved()
    if p.process not in PROCESSES:
        raise ValueError(f"process must be one of {PROCESSES}, got {p.process!r}")
    if p.n < 1:
        raise ValueError(f"n: output length must be >= 1, got {p.n}")
    if p.L < 1:
        raise ValueError(f"L: truncation length must be >= 1, got {p.L}")
    if p.burn_in < p.L:
        raise ValueError(
            f"burn_in: must be >= L so the history window fills with process "
            f"output before sampling (burn_in={p.burn_in}, L={p.L})"
        )

    if p.process == "arfima":
        if not -0.5 < p.d1 < 0.5:
            raise ValueError(f"d: must lie in (-0.5, 0.5), got {p.d1}")
    elif p.process == "fiarch":
        if not 0.0 < p.d1 < 0.5:
            raise ValueError(f"d: must lie in (0, 0.5), got {p.d1}")
    else:
        lo_open = p.process == "fiarch2"
        for name, val in (("d1", p.d1), ("d2", p.d2)):
            if val is None:
                raise ValueError(f"{name}: required for {p.process}")
            ok = (0.0 < val < 0.5) if lo_open else (0.0 <= val < 0.5)
            rng = "(0, 0.5)" if lo_open else "[0, 0.5)"
            if not ok:
                raise ValueError(f"{name}: must lie in {rng}, got {val}")
        if p.w is None:
            raise ValueError(f"w: required for {p.process}")
        if allow_full_w:
            if not 0.0 <= p.w <= 1.0:
                raise ValueError(f"w: must lie in [0, 1], got {p.w}")
            if p.w < 0.5:
                warnings.warn(
                    f"w={p.w} below 0.5: outside the standard coupling range "
                    f"[0.5, 1]", stacklevel=2,
                )
        elif not 0.5 <= p.w <= 1.0:
            raise ValueError(
                f"w: must lie in [0.5, 1], got {p.w} "
                f"(pass allow_full_w to extend to [0, 1])"
            )
    return p


def innovation_streams(seed: int, n: int, count: int = 2) -> tuple[np.ndarray, ...]:
    """Independent unit-Gaussian innovation arrays derived from one seed.

    Stream i comes from PCG64 seeded with SeedSequence(seed).spawn(count)[i].
    """
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return tuple(
        np.random.Generator(np.random.PCG64(c)).standard_normal(int(n))
        for c in children
    )


def _check_innovations(innovations, total: int, count: int):
    arrays = []
    for i, e in enumerate(innovations):
        e = np.ascontiguousarray(e, dtype=np.float64)
        if e.ndim != 1 or e.shape[0] != total:
            raise ValueError(
                f"innovations[{i}]: expected 1-d array of length "
                f"burn_in + n = {total}, got shape {e.shape}"
            )
        arrays.append(e)
    if len(arrays) != count:
        raise ValueError(f"expected {count} innovation streams, got {len(arrays)}")
    return arrays


def _finite_or_raise(*series):
    for s in series:
        if s is not None and not np.isfinite(s).all():
            raise FloatingPointError("generation produced non-finite values")


def _rev(weights: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(weights[::-1])


def gen_arfima(d, n, L=DEFAULT_L, burn_in=None, seed=0, innovations=None) -> SeriesPair:
    """Single long-memory linear series of length n (after burn-in)."""
    params = validate_params(
        GenParams(process="arfima", d1=d, n=int(n), L=int(L), burn_in=burn_in,
                  seed=int(seed))
    )
    total = params.burn_in + params.n
    if innovations is None:
        eps = innovation_streams(params.seed, total)[0]
    else:
        (eps,) = _check_innovations([innovations], total, 1)
    kern = build_kernel(params.d1, params.L)
    x = backend.core.arfima_single(_rev(kern.weights), eps, params.burn_in)
    _finite_or_raise(x)
    return SeriesPair(x=x, y=None, params=params, tail_mass_1=kern.tail_mass)


def gen_arfima2(params: GenParams, allow_full_w=False, innovations=None) -> SeriesPair:
    """Coupled pair of long-memory linear series."""
    p = validate_params(params, allow_full_w=allow_full_w)
    if p.process != "arfima2":
        raise ValueError(f"gen_arfima2 requires process='arfima2', got {p.process!r}")
    total = p.burn_in + p.n
    if innovations is None:
        eps_x, eps_y = innovation_streams(p.seed, total)
    else:
        eps_x, eps_y = _check_innovations(innovations, total, 2)
    k1 = build_kernel(p.d1, p.L)
    k2 = build_kernel(p.d2, p.L)
    x, y = backend.core.arfima_pair(
        _rev(k1.weights), _rev(k2.weights), float(p.w), eps_x, eps_y, p.burn_in
    )
    _finite_or_raise(x, y)
    return SeriesPair(x=x, y=y, params=p,
                      tail_mass_1=k1.tail_mass, tail_mass_2=k2.tail_mass)


def gen_fiarch(d, n, L=DEFAULT_L, burn_in=None, seed=0, innovations=None) -> SeriesPair:
    """Single volatility-clustered series: uncorrelated x_t, long-memory |x_t|."""
    params = validate_params(
        GenParams(process="fiarch", d1=d, n=int(n), L=int(L), burn_in=burn_in,
                  seed=int(seed))
    )
    total = params.burn_in + params.n
    if innovations is None:
        eps = innovation_streams(params.seed, total)[0]
    else:
        (eps,) = _check_innovations([innovations], total, 1)
    kern = build_kernel(params.d1, params.L)
    x, sig_mean = backend.core.fiarch_single(
        _rev(kern.weights), eps, params.burn_in, INIT_ABS_MEAN, kern.tail_mass
    )
    _finite_or_raise(x)
    return SeriesPair(
        x=x, y=None, params=params,
        mu_x=float(np.mean(np.abs(x))), sigma_mean_x=float(sig_mean),
        tail_mass_1=kern.tail_mass,
    )


def gen_fiarch2(params: GenParams, allow_full_w=False, innovations=None) -> SeriesPair:
    """Coupled volatility-clustered pair driven by composite volatilities."""
    p = validate_params(params, allow_full_w=allow_full_w)
    if p.process != "fiarch2":
        raise ValueError(f"gen_fiarch2 requires process='fiarch2', got {p.process!r}")
    total = p.burn_in + p.n
    if innovations is None:
        eps_x, eps_y = innovation_streams(p.seed, total)
    else:
        eps_x, eps_y = _check_innovations(innovations, total, 2)
    k1 = build_kernel(p.d1, p.L)
    k2 = build_kernel(p.d2, p.L)
    lo, hi = STABILITY_RANGE
    x, y, sig_mean_x, sig_mean_y, fail_step = backend.core.fiarch_pair(
        _rev(k1.weights), _rev(k2.weights), float(p.w),
        eps_x, eps_y, p.burn_in, INIT_ABS_MEAN,
        k1.tail_mass, k2.tail_mass, STABILITY_CHECK_INTERVAL, lo, hi,
    )
    if fail_step >= 0:
        raise StabilityError(
            f"composite volatility running mean left [{lo}, {hi}] at step "
            f"{fail_step}: the volatility normalization is not holding"
        )
    _finite_or_raise(x, y)
    return SeriesPair(
        x=x, y=y, params=p,
        mu_x=float(np.mean(np.abs(x))), mu_y=float(np.mean(np.abs(y))),
        sigma_mean_x=float(sig_mean_x), sigma_mean_y=float(sig_mean_y),
        tail_mass_1=k1.tail_mass, tail_mass_2=k2.tail_mass,
    )


def generate(params: GenParams, allow_full_w=False) -> SeriesPair:
    """Dispatch on params.process."""
    p = params.resolved()
    if p.process == "arfima":
        return gen_arfima(p.d1, p.n, p.L, p.burn_in, p.seed)
    if p.process == "fiarch":
        return gen_fiarch(p.d1, p.n, p.L, p.burn_in, p.seed)
    if p.process == "arfima2":
        return gen_arfima2(p, allow_full_w=allow_full_w)
    if p.process == "fiarch2":
        return gen_fiarch2(p, allow_full_w=allow_full_w)
    raise ValueError(f"process must be one of {PROCESSES}, got {p.process!r}")

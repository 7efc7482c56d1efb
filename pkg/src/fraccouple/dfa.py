"""Detrended fluctuation analysis.

The series is integrated (cumulative sum of the mean-subtracted values),
partitioned into non-overlapping windows of each size in both a forward
and a backward pass, and polynomial-detrended per window; F(n) is the
rms of the pooled residuals.  The scaling exponent alpha is the OLS
slope of log10 F against log10 n over the fit range.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["DfaResult", "default_windows", "dfa", "dfa_crossover_scan"]

FIT_RANGE_MIN = 16


@dataclass
class DfaResult:
    """Fluctuation function with its fitted scaling exponent."""

    window_sizes: np.ndarray
    fluctuations: np.ndarray
    alpha: float
    fit_range: tuple[int, int]
    fit_stderr: float
    order: int


def default_windows(n: int, order: int = 1, per_decade: int = 20) -> np.ndarray:
    """Log-spaced window sizes from max(2*(order+2), 8) up to n/4."""
    lo = max(2 * (order + 2), 8)
    hi = n // 4
    if hi < lo:
        raise ValueError(f"series length {n} too short for DFA windows >= {lo}")
    n_pts = max(2, int(np.ceil(np.log10(hi / lo) * per_decade)) + 1)
    grid = np.unique(np.round(np.logspace(np.log10(lo), np.log10(hi), n_pts)))
    return grid.astype(np.int64)


def _fluctuation(profile: np.ndarray, n: int, order: int) -> float:
    N = profile.shape[0]
    k = N // n
    vand = np.vander(np.arange(n, dtype=np.float64), order + 1)
    ssr = 0.0
    for seg in (profile[: k * n], profile[N - k * n:]):
        windows = seg.reshape(k, n)
        _, resid, _, _ = np.linalg.lstsq(vand, windows.T, rcond=None)
        ssr += float(np.sum(resid))
    return np.sqrt(ssr / (2.0 * k * n))


def dfa(x, windows=None, order: int = 1, fit_range=None) -> DfaResult:
    """DFA of one series.

    Parameters
    ----------
    x : array_like
        Input series.
    windows : array_like of int, optional
        Window sizes; defaults to the log-spaced grid of default_windows.
    order : int
        Detrending polynomial order, 1..3 (DFA-1 by default).
    fit_range : (int, int), optional
        Window-size range for the exponent fit; defaults to [16, N/8].
    """
    x = np.asarray(x, dtype=np.float64)
    n_samples = x.shape[0]
    if not 1 <= order <= 3:
        raise ValueError(f"order must be 1..3, got {order}")
    if windows is None:
        windows = default_windows(n_samples, order)
    windows = np.unique(np.asarray(windows, dtype=np.int64))
    if windows.size == 0:
        raise ValueError("windows grid is empty")
    if int(windows.min()) < order + 2:
        raise ValueError(
            f"smallest window {windows.min()} cannot fit an order-{order} "
            f"detrend (need >= {order + 2})"
        )
    if n_samples < 4 * int(windows.max()):
        raise ValueError(
            f"series length {n_samples} too short for window "
            f"{windows.max()} (need length >= 4*max window)"
        )
    if np.all(x == x[0]):
        raise ValueError("zero-variance series: fluctuations are degenerate")

    profile = np.cumsum(x - x.mean())
    fluct = np.array([_fluctuation(profile, int(n), order) for n in windows])
    if np.any(fluct <= 0.0):
        raise ValueError("degenerate input: zero fluctuation in some window")

    if fit_range is None:
        fit_range = (FIT_RANGE_MIN, n_samples // 8)
    fit_lo, fit_hi = int(fit_range[0]), int(fit_range[1])
    mask = (windows >= fit_lo) & (windows <= fit_hi)
    if int(mask.sum()) < 5:
        raise ValueError(
            f"fit range [{fit_lo}, {fit_hi}] covers only {int(mask.sum())} "
            f"grid points (need >= 5)"
        )
    lx = np.log10(windows[mask].astype(np.float64))
    ly = np.log10(fluct[mask])
    k = lx.shape[0]
    lx_c = lx - lx.mean()
    sxx = np.dot(lx_c, lx_c)
    alpha = np.dot(lx_c, ly) / sxx
    intercept = ly.mean() - alpha * lx.mean()
    resid = ly - (alpha * lx + intercept)
    stderr = np.sqrt(np.dot(resid, resid) / (k - 2) / sxx)

    return DfaResult(
        window_sizes=windows, fluctuations=fluct, alpha=float(alpha),
        fit_range=(fit_lo, fit_hi), fit_stderr=float(stderr), order=order,
    )


def dfa_crossover_scan(pair, windows=None, order: int = 1, fit_range=None):
    """DFA of both components of a pair, on the same window grid.

    Volatility processes (fiarch/fiarch2) are analyzed through their
    absolute values; linear processes are analyzed raw.
    """
    if pair.y is None:
        raise ValueError("crossover scan needs a two-component pair")
    take_abs = pair.params.process.startswith("fiarch")
    x = np.abs(pair.x) if take_abs else pair.x
    y = np.abs(pair.y) if take_abs else pair.y
    res_x = dfa(x, windows=windows, order=order, fit_range=fit_range)
    res_y = dfa(y, windows=windows, order=order, fit_range=fit_range)
    return res_x, res_y

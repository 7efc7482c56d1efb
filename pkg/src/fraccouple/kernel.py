"""Fractional weight sequences shared by the ARFIMA and FIARCH generators.

The weight at lag n for scaling parameter d follows a Gamma-function ratio
that decays like n**-(1+d).  Weights are evaluated through the exact
multiplicative recurrence

    a_1 = d,    a_{n+1} = a_n * (n - d) / (n + 1),

never through direct Gamma calls, which overflow once n is a few hundred.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["FracKernel", "build_kernel", "weight_at"]


@dataclass(frozen=True)
class FracKernel:
    """Truncated fractional weight sequence a_1..a_L for one value of d.

    Immutable after construction; safe to share across workers.

    Attributes
    ----------
    d : float
        Scaling parameter, -0.5 < d < 0.5.
    weights : ndarray
        Weights a_1..a_L in lag order, contiguous float64.
    tail_mass : float
        1 - sum(weights).  For 0 < d < 0.5 this is the mass of the
        discarded infinite tail (order L**-d); near zero only for large L.
    """

    d: float
    weights: np.ndarray = field(repr=False)
    tail_mass: float

    @property
    def truncation_length(self) -> int:
        return self.weights.shape[0]

    def normalized_weights(self) -> np.ndarray:
        """Weights rescaled by 1/(1 - tail_mass) so they sum to 1.

        Used by the FIARCH generators, whose stability requires unit
        weight mass.  Requires d > 0 (otherwise the infinite sum is not 1).
        """
        if self.d <= 0.0:
            raise ValueError("weight renormalization requires d > 0")
        return self.weights / (1.0 - self.tail_mass)


def build_kernel(d: float, L: int) -> FracKernel:
    """Compute the truncated weight sequence for scaling parameter d.

    Parameters
    ----------
    d : float
        Scaling parameter in (-0.5, 0.5).
    L : int
        Truncation length, L >= 1.

    Returns
    -------
    FracKernel
    """
    if not -0.5 < d < 0.5:
        raise ValueError(f"scaling parameter d must lie in (-0.5, 0.5), got {d}")
    L = int(L)
    if L < 1:
        raise ValueError(f"truncation length L must be >= 1, got {L}")

    # a_1 = d; cumulative product applies a_{n+1} = a_n * (n - d)/(n + 1).
    n = np.arange(1, L, dtype=np.float64)
    ratios = np.empty(L, dtype=np.float64)
    ratios[0] = d
    if L > 1:
        ratios[1:] = (n - d) / (n + 1.0)
    weights = np.cumprod(ratios)
    weights.setflags(write=False)

    tail_mass = 1.0 - float(np.sum(weights))
    return FracKernel(d=float(d), weights=weights, tail_mass=tail_mass)


def weight_at(kernel: FracKernel, n: int) -> float:
    """Return a_n for 1 <= n <= L (O(1) lookup)."""
    if not 1 <= n <= kernel.truncation_length:
        raise IndexError(
            f"lag {n} outside kernel range [1, {kernel.truncation_length}]"
        )
    return float(kernel.weights[n - 1])

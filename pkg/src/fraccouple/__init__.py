"""fraccouple: coupled long-range correlated time series.

Generates single and two-component ARFIMA and FIARCH processes, estimates
auto- and cross-correlation functions, runs detrended fluctuation analysis,
and builds Fourier phase-randomization surrogates.  A compiled extension
carries the hot generation loops, with a pure-NumPy fallback selected at
import (see ``fraccouple.backend``).
"""

from .backend import backend_name
from .correlation import (
    CorrFunction,
    autocorr,
    crosscorr,
    fiarch_acf_oracle,
    log_lags,
    null_band,
)
from .dfa import DfaResult, default_windows, dfa, dfa_crossover_scan
from .errors import ConfigError, StabilityError
from .generators import (
    GenParams,
    SeriesPair,
    gen_arfima,
    gen_arfima2,
    gen_fiarch,
    gen_fiarch2,
    generate,
    innovation_streams,
)
from .kernel import FracKernel, build_kernel, weight_at
from .surrogate import SurrogateSpec, phase_randomize, surrogate_pair, surrogate_pairs

__version__ = "0.1.0"

__all__ = [
    "CorrFunction",
    "ConfigError",
    "DfaResult",
    "FracKernel",
    "GenParams",
    "SeriesPair",
    "StabilityError",
    "SurrogateSpec",
    "autocorr",
    "backend_name",
    "build_kernel",
    "crosscorr",
    "default_windows",
    "dfa",
    "dfa_crossover_scan",
    "fiarch_acf_oracle",
    "gen_arfima",
    "gen_arfima2",
    "gen_fiarch",
    "gen_fiarch2",
    "generate",
    "innovation_streams",
    "log_lags",
    "null_band",
    "phase_randomize",
    "surrogate_pair",
    "surrogate_pairs",
    "weight_at",
]

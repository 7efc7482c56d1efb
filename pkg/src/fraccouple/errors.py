"""Exception types shared across modules."""


class StabilityError(RuntimeError):
    """Composite volatility drifted outside its stable range during generation."""


class ConfigError(ValueError):
    """Experiment configuration failed to parse or validate."""

"""Pseudo-noise spread spectrum, thermal/quantum noise models, QKD link
models and randomness extraction, with a CSV-emitting command-line front
end."""

__version__ = "0.1.0"

from . import entropy, noisephys, prbs, qkd, spread

__all__ = ["prbs", "spread", "noisephys", "qkd", "entropy", "__version__"]

"""Direct-sequence spreading, despreading and channel identification.

Message bits map to +/-1 symbols via s = (-1)**b and each symbol scales a
full period of the MLS spreading code.  Despreading correlates each chip
block against the code and thresholds the correlation at zero.  The same
two-valued autocorrelation that makes despreading work identifies an
unknown FIR channel: the circular cross-correlation of one steady-state
period of the channel output with the probe equals (N+1) h[m] - sum(h),
which is inverted exactly using the lag-summed tap-sum estimate.

Signals are plain float arrays of dimensionless chip-rate samples; message
bits and channel taps are 1-D arrays as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .prbs import MlsSequence

__all__ = [
    "DespreadResult",
    "spread",
    "despread",
    "convolve",
    "identify_impulse_response",
    "add_awgn",
]

OPERATIONS = (
    "spread",
    "despread",
    "convolve",
    "identify_impulse_response",
    "add_awgn",
)

ERASURE = -1  # bit value recorded when a correlation ties at exactly zero


@dataclass(frozen=True)
class DespreadResult:
    """Recovered bits (0/1, ERASURE on ties) with per-block correlations."""

    bits: np.ndarray
    correlations: np.ndarray
    erasures: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.bits)


def spread(bits: Sequence[int], code: MlsSequence) -> np.ndarray:
    """Spread message bits onto the code: chip stream of len(bits) * N."""
    b = np.asarray(bits)
    if b.ndim != 1 or len(b) == 0:
        raise ValueError("message must be a nonempty 1-D bit sequence")
    if not np.all((b == 0) | (b == 1)):
        raise ValueError("message bits must be 0 or 1")
    symbols = (1 - 2 * b.astype(np.int64)).astype(np.float64)
    return np.outer(symbols, code.chips.astype(np.float64)).ravel()


def despread(chips: np.ndarray, code: MlsSequence) -> DespreadResult:
    """Correlate each length-N block with the code and threshold at zero."""
    x = np.asarray(chips, dtype=np.float64)
    n = code.period
    if x.ndim != 1 or len(x) == 0 or len(x) % n != 0:
        raise ValueError(f"misaligned stream: length must be a multiple of N={n}")
    blocks = x.reshape(-1, n)
    corr = blocks @ code.chips.astype(np.float64)
    bits = np.where(corr > 0, 0, 1).astype(np.int8)
    ties = np.flatnonzero(corr == 0)
    bits[ties] = ERASURE
    return DespreadResult(bits, corr, tuple(int(i) for i in ties))


def convolve(h: Sequence[float], x: np.ndarray) -> np.ndarray:
    """Discrete linear convolution; output length len(x) + len(h) - 1."""
    taps = np.asarray(h, dtype=np.float64)
    if taps.ndim != 1 or len(taps) == 0:
        raise ValueError("impulse response must have at least one tap")
    return np.convolve(np.asarray(x, dtype=np.float64), taps)


def identify_impulse_response(
    probe: MlsSequence, y: np.ndarray, max_taps: int
) -> np.ndarray:
    """Estimate the first ``max_taps`` channel taps from the probe response.

    ``y`` must contain at least two probe periods so the first period can be
    discarded as the convolution transient.
    """
    n = probe.period
    if not 1 <= max_taps <= n // 2:
        raise ValueError(f"max_taps must lie in [1, N/2] with N={n}")
    y = np.asarray(y, dtype=np.float64)
    if len(y) < 2 * n:
        raise ValueError("insufficient observation: need at least 2 probe periods")
    steady = y[n : 2 * n]
    x = probe.chips.astype(np.float64)
    # c[m] = sum_j steady[j] x[(j - m) mod N] via the correlation theorem.
    c = np.fft.irfft(np.fft.rfft(steady) * np.conj(np.fft.rfft(x)), n=n)
    tap_sum = c.sum()  # sum over all N lags recovers sum(h) exactly
    h_hat = (c + tap_sum) / (n + 1)
    return h_hat[:max_taps]


def add_awgn(x: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Add independent zero-mean Gaussian noise of standard deviation sigma."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    return x + rng.normal(0.0, sigma, size=x.shape)

"""Pseudo-random binary sequences from primitive mod-2 polynomials.

A Fibonacci LFSR is stepped from a nonzero seed; the register holds the
last ``n`` output bits (oldest first), the next output is the oldest bit
and the feedback bit is the XOR of the tapped stages.  One full period of
the output, mapped through ``x[n] = (-1)**a[n]``, is a maximum-length
sequence (MLS): a balanced +/-1 chip sequence of period ``2**n - 1`` whose
circular autocorrelation is ``N`` at lag 0 and -1 at every other lag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GaloisPolynomial",
    "LfsrState",
    "MlsSequence",
    "POLYNOMIAL_TABLE",
    "lfsr_step",
    "generate_prbs",
    "mls_from_prbs",
    "mls_sequence",
    "circular_autocorrelation",
    "crest_factor",
    "polynomial_table",
]

# Public operations of this module, consumed by the CLI coverage check.
OPERATIONS = (
    "lfsr_step",
    "generate_prbs",
    "mls_from_prbs",
    "circular_autocorrelation",
    "polynomial_table",
    "crest_factor",
)

# Tap connections of the first 15 primitive polynomials mod 2; entry
# (n, k, .., 0) stands for 1 + x**k + .. + x**n.
_TABLE_TAPS = (
    (1, 0),
    (2, 1, 0),
    (3, 1, 0),
    (4, 1, 0),
    (5, 2, 0),
    (6, 1, 0),
    (7, 1, 0),
    (8, 4, 3, 2, 0),
    (9, 4, 0),
    (10, 3, 0),
    (11, 2, 0),
    (12, 6, 4, 1, 0),
    (13, 4, 3, 1, 0),
    (14, 5, 3, 1, 0),
    (15, 1, 0),
)


@dataclass(frozen=True)
class GaloisPolynomial:
    """Primitive polynomial mod 2, stored as its nonzero exponents."""

    degree: int
    taps: tuple[int, ...]

    def __post_init__(self) -> None:
        taps = tuple(sorted(set(int(t) for t in self.taps), reverse=True))
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "degree", int(self.degree))
        if self.degree < 1:
            raise ValueError("polynomial degree must be >= 1")
        if 0 not in taps or self.degree not in taps:
            raise ValueError("taps must contain both the degree and 0")
        if any(t < 0 or t > self.degree for t in taps):
            raise ValueError("tap exponents must lie in [0, degree]")
        if taps not in _TABLE_TAPS and self.degree <= 20:
            # Foreign polynomials are only accepted when they actually produce
            # a maximum-length state cycle (checked exhaustively up to n=20).
            if _state_period(taps, self.degree) != self.period:
                raise ValueError(
                    f"taps {taps} do not generate a maximum-length sequence"
                )

    @property
    def period(self) -> int:
        return 2**self.degree - 1


def _state_period(taps: tuple[int, ...], degree: int) -> int:
    feedback_taps = [t for t in taps if t < degree]
    start = (1,) + (0,) * (degree - 1)
    reg = start
    for step in range(1, 2**degree):
        fb = 0
        for t in feedback_taps:
            fb ^= reg[t]
        reg = reg[1:] + (fb,)
        if reg == start:
            return step
    return 2**degree  # no return within the maximal cycle length


POLYNOMIAL_TABLE: tuple[GaloisPolynomial, ...] = tuple(
    GaloisPolynomial(t[0], t) for t in _TABLE_TAPS
)


def polynomial_table() -> list[GaloisPolynomial]:
    """The first 15 primitive polynomials, orders 1 through 15."""
    return list(POLYNOMIAL_TABLE)


def table_polynomial(order: int) -> GaloisPolynomial:
    """Table entry of the given order (1..15)."""
    if not 1 <= order <= len(POLYNOMIAL_TABLE):
        raise ValueError(f"no table polynomial of order {order}")
    return POLYNOMIAL_TABLE[order - 1]


@dataclass(frozen=True)
class LfsrState:
    """Shift-register contents; ``register[0]`` is the next output bit."""

    register: tuple[int, ...]
    polynomial: GaloisPolynomial

    def __post_init__(self) -> None:
        reg = tuple(int(b) for b in self.register)
        object.__setattr__(self, "register", reg)
        if len(reg) != self.polynomial.degree:
            raise ValueError("register length must equal the polynomial degree")
        if any(b not in (0, 1) for b in reg):
            raise ValueError("register bits must be 0 or 1")
        if not any(reg):
            raise ValueError("degenerate seed: all-zero register is a fixed point")

    @classmethod
    def from_seed(cls, polynomial: GaloisPolynomial, seed: int | Sequence[int]) -> "LfsrState":
        """Build a state from an integer seed (bit i -> stage i) or a bit list."""
        n = polynomial.degree
        if isinstance(seed, (int, np.integer)):
            if not 0 < seed < 2**n:
                raise ValueError(f"degenerate seed: need 0 < seed < 2**{n}")
            reg = tuple((int(seed) >> i) & 1 for i in range(n))
        else:
            reg = tuple(int(b) for b in seed)
        return cls(reg, polynomial)


def lfsr_step(state: LfsrState) -> tuple[int, LfsrState]:
    """Advance the register one step; returns (output bit, new state)."""
    reg = state.register
    degree = state.polynomial.degree
    fb = 0
    for t in state.polynomial.taps:
        if t < degree:
            fb ^= reg[t]
    return reg[0], LfsrState(reg[1:] + (fb,), state.polynomial)


def generate_prbs(
    polynomial: GaloisPolynomial, seed: int | Sequence[int], length: int
) -> np.ndarray:
    """First ``length`` output bits of the LFSR stream, as a uint8 array."""
    if length < 1:
        raise ValueError("empty request: length must be >= 1")
    state = LfsrState.from_seed(polynomial, seed)
    degree = polynomial.degree
    feedback_taps = [t for t in polynomial.taps if t < degree]
    reg = list(state.register)
    out = np.empty(length, dtype=np.uint8)
    for i in range(length):
        out[i] = reg[0]
        fb = 0
        for t in feedback_taps:
            fb ^= reg[t]
        reg.pop(0)
        reg.append(fb)
    return out


@dataclass(frozen=True)
class MlsSequence:
    """One full period of +/-1 chips from a maximum-length PRBS."""

    chips: np.ndarray
    order: int = field(default=0)

    def __post_init__(self) -> None:
        chips = np.asarray(self.chips, dtype=np.int8)
        chips.flags.writeable = False
        object.__setattr__(self, "chips", chips)
        order = self.order or int(np.log2(len(chips) + 1))
        object.__setattr__(self, "order", order)
        if len(chips) != 2**order - 1:
            raise ValueError("chip count must be 2**order - 1")
        if not np.all(np.abs(chips) == 1):
            raise ValueError("chips must be +1 or -1")
        if abs(int(chips.sum(dtype=np.int64))) != 1:
            raise ValueError("unbalanced sequence: chip sum must be +1 or -1")

    @property
    def period(self) -> int:
        return len(self.chips)


def mls_from_prbs(bits: Iterable[int]) -> MlsSequence:
    """Map one full PRBS period through x = (-1)**a (bit 1 -> chip -1)."""
    a = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
    n = len(a)
    order = int(n + 1).bit_length() - 1
    if n < 1 or 2**order - 1 != n:
        raise ValueError("not a full MLS period: length must be 2**n - 1")
    chips = (1 - 2 * a.astype(np.int8)).astype(np.int8)
    return MlsSequence(chips, order)


def mls_sequence(order: int, seed: int = 1) -> MlsSequence:
    """Full-period MLS for a table polynomial of the given order."""
    poly = table_polynomial(order)
    return mls_from_prbs(generate_prbs(poly, seed, poly.period))


def circular_autocorrelation(
    seq: MlsSequence | np.ndarray, normalized: bool = False
) -> np.ndarray:
    """Full-period circular autocorrelation R[n] = sum_i x[i] x[(n+i) mod N].

    Unnormalized by default (peak N at lag 0); ``normalized=True`` divides
    by N.
    """
    x = seq.chips if isinstance(seq, MlsSequence) else np.asarray(seq)
    x = x.astype(np.float64)
    spectrum = np.fft.rfft(x)
    r = np.fft.irfft(spectrum * np.conj(spectrum), n=len(x))
    if normalized:
        return r / len(x)
    return np.rint(r).astype(np.int64)


def crest_factor(seq: MlsSequence | np.ndarray) -> float:
    """Peak absolute value over the population standard deviation."""
    x = seq.chips if isinstance(seq, MlsSequence) else np.asarray(seq, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if len(x) == 0:
        raise ValueError("empty sequence")
    std = float(x.std())
    if std == 0.0:
        raise ValueError("degenerate sequence: zero standard deviation")
    return float(np.max(np.abs(x)) / std)

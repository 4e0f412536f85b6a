"""Entropy functionals and the mod-2 linear randomness extractor.

Shannon entropy H = -sum p log2 p, the order-q Renyi family
R_q = log2(sum p**q) / (1 - q), and the min-entropy R_inf = -log2 max p,
ordered as 0 <= R_inf <= R_q <= H <= R_q' for q > 1 > q' > 0.

The extractor compresses l weakly random bits into k < l bits through a
k x l bit matrix over GF(2); with per-bit input entropy s and target
per-bit entropy s', the output deviates from uniform by at most
eps = 2**(-(l s - k s') / 2), handled in log2 to survive huge exponents.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

from .prbs import GaloisPolynomial, generate_prbs

__all__ = [
    "Distribution",
    "ExtractorMatrix",
    "PoissonEntropies",
    "HierarchyCheck",
    "HierarchyReport",
    "shannon_entropy",
    "renyi_entropy",
    "min_entropy",
    "poisson_entropies",
    "extract",
    "generate_extractor_matrix",
    "extractor_epsilon_log2",
    "extractor_epsilon",
    "hierarchy_check",
]

OPERATIONS = (
    "shannon_entropy",
    "renyi_entropy",
    "min_entropy",
    "poisson_entropies",
    "extract",
    "generate_extractor_matrix",
    "extractor_epsilon_log2",
    "hierarchy_check",
)


@dataclass(frozen=True)
class Distribution:
    """Discrete probability vector: nonnegative, summing to 1 within 1e-9."""

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probabilities, dtype=np.float64)
        if p.ndim != 1 or len(p) == 0:
            raise ValueError("probabilities must be a nonempty 1-D array")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1 within 1e-9")
        p.flags.writeable = False
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def normalized(cls, weights: Sequence[float]) -> "Distribution":
        w = np.asarray(weights, dtype=np.float64)
        total = w.sum()
        if total <= 0:
            raise ValueError("weights must have a positive sum")
        return cls(w / total)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))


def shannon_entropy(d: Distribution) -> float:
    """H = -sum p log2 p in bits, with 0 log 0 = 0."""
    p = d.probabilities[d.probabilities > 0]
    return float(-(p * np.log2(p)).sum())


def renyi_entropy(d: Distribution, q: float) -> float:
    """Order-q Renyi entropy log2(sum p**q) / (1 - q) in bits.

    q = 0 counts the support; q = 1 is the Shannon limit and is served by
    shannon_entropy.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if q == 1:
        raise ValueError("q = 1 is the Shannon limit; use shannon_entropy")
    p = d.probabilities[d.probabilities > 0]
    if q == 0:
        return float(math.log2(len(p)))
    return float(np.log2((p**q).sum()) / (1.0 - q))


def min_entropy(d: Distribution) -> float:
    """R_inf = -log2 of the largest outcome probability, in bits."""
    return float(-np.log2(d.probabilities.max()))


class PoissonEntropies(NamedTuple):
    shannon_bits: float
    min_bits: float


def poisson_entropies(mean: float) -> PoissonEntropies:
    """Shannon and min-entropy of Poisson-distributed counts with the given mean.

    Shannon uses the Gaussian-limit value log2(2 pi e mean) / 2; the
    min-entropy takes the modal probability at floor(mean), evaluated with
    log-gamma so large means do not overflow.
    """
    if mean <= 0:
        raise ValueError("mean must be positive")
    shannon = 0.5 * math.log2(2.0 * math.pi * math.e * mean)
    k = math.floor(mean)
    log_pmax = -mean + k * math.log(mean) - float(gammaln(k + 1.0))
    return PoissonEntropies(shannon, -log_pmax / math.log(2.0))


@dataclass(frozen=True)
class ExtractorMatrix:
    """k x l bit matrix over GF(2) mapping l input bits to k output bits."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.bits, dtype=np.uint8)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ValueError("matrix must be 2-D and nonempty")
        if not np.all((m == 0) | (m == 1)):
            raise ValueError("matrix entries must be bits")
        if m.shape[0] >= m.shape[1]:
            raise ValueError("extractor must compress: need k < l")
        m.flags.writeable = False
        object.__setattr__(self, "bits", m)

    @property
    def k(self) -> int:
        return self.bits.shape[0]

    @property
    def l(self) -> int:
        return self.bits.shape[1]


def extract(matrix: ExtractorMatrix, x: Sequence[int]) -> np.ndarray:
    """Y = m x over GF(2): each output bit XORs the selected input bits."""
    bits = np.asarray(x, dtype=np.uint8)
    if bits.ndim != 1 or len(bits) != matrix.l:
        raise ValueError(f"input must hold exactly l={matrix.l} bits")
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("input entries must be bits")
    return (matrix.bits.astype(np.int64) @ bits.astype(np.int64) % 2).astype(np.uint8)


def generate_extractor_matrix(
    polynomial: GaloisPolynomial, seed: int | Sequence[int], k: int, l: int
) -> ExtractorMatrix:
    """Fill a k x l matrix row-major with PRBS bits from the polynomial."""
    if k < 1 or l < 1:
        raise ValueError("matrix dimensions must be positive")
    if k >= l:
        raise ValueError("extractor must compress: need k < l")
    bits = generate_prbs(polynomial, seed, k * l)
    return ExtractorMatrix(bits.reshape(k, l))


def extractor_epsilon_log2(l: int, k: int, s: float, s_prime: float) -> float:
    """log2 of the uniformity deviation bound, -(l s - k s') / 2.

    Warns when the input entropy budget l s does not exceed the output
    requirement k s' (no security margin).
    """
    if l <= 0 or k <= 0 or s < 0 or s_prime < 0:
        raise ValueError("counts must be positive and entropies nonnegative")
    margin = l * s - k * s_prime
    if margin < 0:
        warnings.warn("no security margin: l s < k s'", stacklevel=2)
    return -margin / 2.0


def extractor_epsilon(l: int, k: int, s: float, s_prime: float) -> float | None:
    """The deviation bound itself, or None when it underflows float range."""
    log2_eps = extractor_epsilon_log2(l, k, s, s_prime)
    eps = 2.0**log2_eps
    return eps if eps > 0.0 else None


@dataclass(frozen=True)
class HierarchyCheck:
    label: str
    lower: float
    upper: float
    passed: bool

    @property
    def slack(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class HierarchyReport:
    checks: tuple[HierarchyCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.all_pass


_SLACK_TOL = 1e-12  # floating-point slack allowed on tight inequalities


def hierarchy_check(
    d: Distribution, q_list: Sequence[float], q_prime_list: Sequence[float]
) -> HierarchyReport:
    """Check 0 <= R_inf <= R_q <= H <= R_q' for the given q > 1 and q' < 1.

    Violations are reported, not raised, so misordered q ranges show up as
    failing checks.
    """
    h = shannon_entropy(d)
    r_inf = min_entropy(d)
    checks = [
        HierarchyCheck("0 <= R_inf", 0.0, r_inf, r_inf >= -_SLACK_TOL),
    ]
    for q in q_list:
        r_q = renyi_entropy(d, q)
        checks.append(
            HierarchyCheck(f"R_inf <= R_{q:g}", r_inf, r_q, r_q - r_inf >= -_SLACK_TOL)
        )
        checks.append(HierarchyCheck(f"R_{q:g} <= H", r_q, h, h - r_q >= -_SLACK_TOL))
    for qp in q_prime_list:
        r_qp = renyi_entropy(d, qp)
        checks.append(
            HierarchyCheck(f"H <= R_{qp:g}", h, r_qp, r_qp - h >= -_SLACK_TOL)
        )
    return HierarchyReport(tuple(checks))

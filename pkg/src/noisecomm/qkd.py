"""BB84/BBM92 session simulation and fiber-link key-rate models.

Protocol conventions: the PLUS basis holds the 0/90 degree polarizations
(right-arrow = bit 0, up-arrow = bit 1) and the CROSS basis the +/-45
degree ones (down-diagonal = bit 0, up-diagonal = bit 1).  Measuring in
the preparation basis reproduces the prepared bit; a mismatched basis
yields a uniform bit.  Sifting keeps the positions where sender and
receiver bases agree.

For entangled pairs the matched-basis outcomes follow the Bell-state Born
rules: psi+ is anti-correlated in PLUS and correlated in CROSS, psi- is
anti-correlated in both, phi+ is correlated in both and phi- is correlated
in PLUS and anti-correlated in CROSS.  Mismatched bases give independent
uniform outcomes.

Link models: attenuation A(L) = 10**(-alpha0 L / 10), sifted error rate
Q_e(L) = P_e / (A(L) mu eta_Bob + 2 P_e), and secure key rate
K(L) = G_mu ( -h2(Q_e(L)) + Omega (1 - h2(e1)) ) with h2 the binary
entropy and G_mu the detection gain (default: the sifting-halved value
A(L) mu eta_Bob / 2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Basis",
    "QkdSymbol",
    "TwoPhotonState",
    "LinkParams",
    "KeyRateParams",
    "KeyRateResult",
    "SiftResult",
    "DEFAULT_LINK",
    "qubit_rotate",
    "bb84_session",
    "bbm92_measure",
    "bbm92_session",
    "attenuation",
    "optimal_distance",
    "qber",
    "binary_entropy",
    "key_rate",
]

OPERATIONS = (
    "qubit_rotate",
    "bb84_session",
    "bbm92_measure",
    "attenuation",
    "optimal_distance",
    "qber",
    "binary_entropy",
    "key_rate",
)


class Basis(enum.Enum):
    PLUS = 0  # 0 / 90 degree linear polarizations
    CROSS = 1  # +45 / -45 degree linear polarizations


class TwoPhotonState(enum.Enum):
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"


_POLARIZATION = {
    (Basis.PLUS, 0): "right",
    (Basis.PLUS, 1): "up",
    (Basis.CROSS, 0): "down-diagonal",
    (Basis.CROSS, 1): "up-diagonal",
}


@dataclass(frozen=True)
class QkdSymbol:
    """One transmitted polarization symbol in (basis, bit) form."""

    basis: Basis
    bit: int

    def __post_init__(self) -> None:
        if self.bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")

    @property
    def polarization(self) -> str:
        return _POLARIZATION[(self.basis, self.bit)]


@dataclass(frozen=True)
class LinkParams:
    """Fiber and detector parameters of the point-to-point link."""

    alpha0: float = 0.2  # dB/km
    p_error: float = 8.5e-7  # error probability per clock cycle
    mu: float = 0.1  # mean photons per pulse
    eta_bob: float = 0.045  # receiver detection efficiency

    def __post_init__(self) -> None:
        if self.alpha0 <= 0:
            raise ValueError("alpha0 must be positive")
        for name in ("p_error", "mu", "eta_bob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


DEFAULT_LINK = LinkParams()


@dataclass(frozen=True)
class KeyRateParams:
    """Key-rate model inputs; the single-photon bounds are not derived here.

    ``omega_single`` is the fraction of Bob's detections caused by
    single-photon pulses and ``e1`` their error rate; both are externally
    estimated inputs.  ``gain_model`` is either "sifted" (G = A mu eta / 2)
    or a fixed numeric gain.
    """

    omega_single: float = 1.0
    e1: float = 0.0
    e_detector: float = 0.0
    gain_model: float | str = "sifted"

    def __post_init__(self) -> None:
        for name in ("omega_single", "e1", "e_detector"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if isinstance(self.gain_model, str):
            if self.gain_model != "sifted":
                raise ValueError("gain_model must be 'sifted' or a numeric gain")
        elif self.gain_model <= 0:
            raise ValueError("numeric gain must be positive")

    @classmethod
    def from_detector_error(cls, e_detector: float, omega_single: float = 1.0) -> "KeyRateParams":
        """Use the detector error rate as the single-photon error estimate."""
        return cls(omega_single=omega_single, e1=e_detector, e_detector=e_detector)


@dataclass(frozen=True)
class KeyRateResult:
    bits_per_symbol: float
    link_dead: bool


@dataclass(frozen=True)
class SiftResult:
    """Outcome of a sifted QKD session."""

    sent: int
    sifted_key_alice: np.ndarray
    sifted_key_bob: np.ndarray
    matched_basis_fraction: float
    error_fraction: float

    def __post_init__(self) -> None:
        a = np.asarray(self.sifted_key_alice, dtype=np.int8)
        b = np.asarray(self.sifted_key_bob, dtype=np.int8)
        if len(a) != len(b):
            raise ValueError("sifted keys must have equal length")
        for frac in (self.matched_basis_fraction, self.error_fraction):
            if not 0.0 <= frac <= 1.0:
                raise ValueError("fractions must lie in [0, 1]")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "sifted_key_alice", a)
        object.__setattr__(self, "sifted_key_bob", b)

    @property
    def sifted_length(self) -> int:
        return len(self.sifted_key_alice)


def qubit_rotate(theta: float, phi: float, state: np.ndarray) -> np.ndarray:
    """Apply the Bloch-sphere rotation R(theta, phi) to a pure qubit state.

    R = [[cos(t/2), -i e^{i phi} sin(t/2)],
         [-i e^{-i phi} sin(t/2), cos(t/2)]]
    """
    psi = np.asarray(state, dtype=np.complex128)
    if psi.shape != (2,):
        raise ValueError("state must be a 2-component vector")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("state must be normalized to 1 within 1e-9")
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    rot = np.array(
        [
            [c, -1j * np.exp(1j * phi) * s],
            [-1j * np.exp(-1j * phi) * s, c],
        ],
        dtype=np.complex128,
    )
    return rot @ psi


def bb84_session(
    n: int, eavesdrop: str = "none", rng: np.random.Generator | None = None
) -> SiftResult:
    """Simulate n BB84 symbols, sift, and report the error fraction.

    ``eavesdrop`` is "none" or "intercept-resend" (Eve measures every
    symbol in a uniformly random basis and resends her outcome).  The
    channel itself is lossless and error-free; photon loss lives in the
    analytic qber/key_rate models.
    """
    if n < 1:
        raise ValueError("need at least one symbol")
    if eavesdrop not in ("none", "intercept-resend"):
        raise ValueError("eavesdrop must be 'none' or 'intercept-resend'")
    rng = np.random.default_rng() if rng is None else rng

    alice_basis = rng.integers(0, 2, n)
    alice_bits = rng.integers(0, 2, n)
    send_basis, send_bits = alice_basis, alice_bits
    if eavesdrop == "intercept-resend":
        eve_basis = rng.integers(0, 2, n)
        eve_bits = np.where(
            eve_basis == alice_basis, alice_bits, rng.integers(0, 2, n)
        )
        send_basis, send_bits = eve_basis, eve_bits
    bob_basis = rng.integers(0, 2, n)
    bob_bits = np.where(bob_basis == send_basis, send_bits, rng.integers(0, 2, n))

    matched = alice_basis == bob_basis
    key_a = alice_bits[matched].astype(np.int8)
    key_b = bob_bits[matched].astype(np.int8)
    errors = float(np.mean(key_a != key_b)) if len(key_a) else 0.0
    return SiftResult(n, key_a, key_b, float(matched.mean()), errors)


# Matched-basis correlation sign per (state, basis): True = same bits.
_BORN_CORRELATED = {
    (TwoPhotonState.PSI_PLUS, Basis.PLUS): False,
    (TwoPhotonState.PSI_PLUS, Basis.CROSS): True,
    (TwoPhotonState.PSI_MINUS, Basis.PLUS): False,
    (TwoPhotonState.PSI_MINUS, Basis.CROSS): False,
    (TwoPhotonState.PHI_PLUS, Basis.PLUS): True,
    (TwoPhotonState.PHI_PLUS, Basis.CROSS): True,
    (TwoPhotonState.PHI_MINUS, Basis.PLUS): True,
    (TwoPhotonState.PHI_MINUS, Basis.CROSS): False,
}


def bbm92_measure(
    state: TwoPhotonState,
    basis_a: Basis,
    basis_b: Basis,
    rng: np.random.Generator,
) -> tuple[int, int]:
    """Joint polarization measurement of one entangled pair.

    Matched bases give perfectly (anti-)correlated bits per the Bell-state
    Born rules; mismatched bases give independent uniform bits.
    """
    if basis_a is not basis_b:
        return int(rng.integers(0, 2)), int(rng.integers(0, 2))
    bit_a = int(rng.integers(0, 2))
    if _BORN_CORRELATED[(state, basis_a)]:
        return bit_a, bit_a
    return bit_a, 1 - bit_a


def bbm92_session(
    n: int, state: TwoPhotonState, rng: np.random.Generator
) -> dict[tuple[Basis, Basis], np.ndarray]:
    """Measure n pairs with uniformly random bases on each side.

    Returns, per (basis_a, basis_b), the 2x2 joint counts of
    (bit_a, bit_b).
    """
    if n < 1:
        raise ValueError("need at least one pair")
    counts = {
        (ba, bb): np.zeros((2, 2), dtype=np.int64) for ba in Basis for bb in Basis
    }
    for _ in range(n):
        ba = Basis(int(rng.integers(0, 2)))
        bb = Basis(int(rng.integers(0, 2)))
        bit_a, bit_b = bbm92_measure(state, ba, bb, rng)
        counts[(ba, bb)][bit_a, bit_b] += 1
    return counts


def attenuation(distance_km: float, alpha0: float) -> float:
    """Fiber power transmission 10**(-alpha0 L / 10)."""
    if distance_km < 0:
        raise ValueError("distance must be >= 0")
    return 10.0 ** (-alpha0 * distance_km / 10.0)


def optimal_distance(n: int, alpha0: float) -> float:
    """Distance maximizing L * A(L)**n, i.e. 10 / (n alpha0 ln 10)."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if alpha0 <= 0:
        raise ValueError("alpha0 must be positive")
    return 10.0 / (n * alpha0 * math.log(10.0))


def qber(distance_km: float, link: LinkParams) -> float:
    """Sifted-key error rate P_e / (A(L) mu eta_Bob + 2 P_e)."""
    a = attenuation(distance_km, link.alpha0)
    return link.p_error / (a * link.mu * link.eta_bob + 2.0 * link.p_error)


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy h2(x) in bits, with h2(0) = h2(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def key_rate(distance_km: float, link: LinkParams, params: KeyRateParams) -> KeyRateResult:
    """Secure key rate in bits per symbol; negative values clamp to zero."""
    a = attenuation(distance_km, link.alpha0)
    if params.gain_model == "sifted":
        gain = 0.5 * a * link.mu * link.eta_bob
    else:
        gain = float(params.gain_model)
    budget = (
        -binary_entropy(qber(distance_km, link))
        + params.omega_single * (1.0 - binary_entropy(params.e1))
    )
    if budget < 0.0:
        return KeyRateResult(0.0, True)
    return KeyRateResult(gain * budget, False)

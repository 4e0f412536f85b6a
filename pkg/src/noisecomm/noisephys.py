"""Thermal and quantum noise models with stochastic simulators.

Closed-form spectra
-------------------
* Quantum resistor PSD (one-sided, linear frequency):
  ``S_V(f) = 4 R h f / (exp(h f / k_B T) - 1)``, whose 0..inf integral is
  ``2 R (pi k_B T)**2 / (3 h)`` and whose f->0 limit is the white value
  ``4 R k_B T``.
* RC-filtered thermal voltage (two-sided, angular frequency):
  ``S_V(w) = 2 R k_B T / (1 + (R C w)**2)``.
* Quantum FDT current PSD: ``hbar w coth(hbar w / 2 k_B T) Re Y(w)``,
  identically ``2 (<n> + 1/2) hbar w Re Y(w)``.
* Transmission-line voltage PSD, emission branch
  ``2 R hbar w / (1 - exp(-hbar w / k_B T))`` and absorption branch
  ``2 R hbar w / (exp(hbar w / k_B T) - 1)``; their sum is the symmetrized
  coth form and their ratio is the detailed-balance factor
  ``exp(hbar w / k_B T)``.

Simulators
----------
Euler-Maruyama integration of the RC circuit Langevin equation
``R dq/dt = -q/C + xi(t)`` and of the Brownian velocity equation
``m dv/dt = -m gamma v + xi(t)``.  The white-noise strengths are fixed by
equipartition of the stationary state: ``lambda = 2 R k_B T`` for the
circuit (so that <V**2> = k_B T / C) and ``lambda = 2 m gamma k_B T`` for
the particle (so that <v**2> = k_B T / m).

Spectral conventions differ by factors of 2 between one/two-sided and
linear/angular frequency; every ``SpectralDensity`` carries explicit tags
and ``converted`` moves between them before any comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "PhysConstants",
    "CODATA",
    "K_B",
    "H",
    "HBAR",
    "ResistorSpec",
    "RcCircuit",
    "LangevinParticle",
    "TimeSeries",
    "SpectralDensity",
    "bose_einstein",
    "psd_nyquist_quantum",
    "psd_white_classical",
    "variance_quantum_total",
    "variance_band_limited",
    "simulate_rc",
    "psd_rc_lorentzian",
    "simulate_brownian",
    "fdt_gamma_from_autocorrelation",
    "qfdt_current_psd",
    "psd_transmission_line",
    "psd_transmission_line_absorption",
    "psd_transmission_line_symmetrized",
    "mean_mode_energy",
    "colored_noise",
    "periodogram",
    "density_of_states",
]

OPERATIONS = (
    "bose_einstein",
    "psd_nyquist_quantum",
    "psd_white_classical",
    "variance_quantum_total",
    "variance_band_limited",
    "simulate_rc",
    "psd_rc_lorentzian",
    "simulate_brownian",
    "fdt_gamma_from_autocorrelation",
    "qfdt_current_psd",
    "psd_transmission_line",
    "psd_transmission_line_symmetrized",
    "mean_mode_energy",
    "colored_noise",
    "periodogram",
    "density_of_states",
)


@dataclass(frozen=True)
class PhysConstants:
    """2019 SI (CODATA) constants, fixed in one place."""

    k_b: float = 1.380649e-23  # J/K
    h: float = 6.62607015e-34  # J s
    hbar: float = 6.62607015e-34 / (2.0 * math.pi)

    def __post_init__(self) -> None:
        if abs(self.hbar - self.h / (2.0 * math.pi)) > 1e-12 * self.hbar:
            raise ValueError("hbar must equal h / 2 pi")


CODATA = PhysConstants()
K_B = CODATA.k_b
H = CODATA.h
HBAR = CODATA.hbar


@dataclass(frozen=True)
class ResistorSpec:
    """Resistor R at temperature T."""

    resistance: float  # ohm
    temperature: float  # K

    def __post_init__(self) -> None:
        if self.resistance <= 0 or self.temperature <= 0:
            raise ValueError("resistance and temperature must be positive")


@dataclass(frozen=True)
class RcCircuit:
    """Parallel RC circuit in contact with a bath at temperature T."""

    resistance: float  # ohm
    capacitance: float  # F
    temperature: float  # K

    def __post_init__(self) -> None:
        if min(self.resistance, self.capacitance, self.temperature) <= 0:
            raise ValueError("R, C and T must be positive")

    @property
    def tau(self) -> float:
        """Relaxation time RC."""
        return self.resistance * self.capacitance


@dataclass(frozen=True)
class LangevinParticle:
    """Brownian particle: mass, friction rate, velocity-diffusion constant.

    Consistency ``diffusion = gamma k_B T / mass`` is enforced, so the
    stationary velocity variance ``diffusion / gamma`` equals the
    equipartition value ``k_B T / mass``.
    """

    mass: float  # kg
    gamma: float  # 1/s
    diffusion: float  # (m/s)**2 / s
    temperature: float  # K

    def __post_init__(self) -> None:
        if min(self.mass, self.gamma, self.diffusion, self.temperature) <= 0:
            raise ValueError("mass, gamma, diffusion and temperature must be positive")
        expected = self.gamma * K_B * self.temperature / self.mass
        if abs(self.diffusion - expected) > 1e-9 * expected:
            raise ValueError(
                f"inconsistent diffusion constant: expected gamma k_B T / m = {expected:g}"
            )

    @classmethod
    def from_temperature(cls, mass: float, gamma: float, temperature: float) -> "LangevinParticle":
        return cls(mass, gamma, gamma * K_B * temperature / mass, temperature)


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled real signal; samples[i] is the value at (i+1) dt."""

    dt: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or len(samples) == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(1, len(self.samples) + 1)


Sides = Literal["one-sided", "two-sided"]
FrequencyUnit = Literal["linear", "angular"]


@dataclass(frozen=True)
class SpectralDensity:
    """PSD samples with explicit one/two-sided and linear/angular tags."""

    frequencies: np.ndarray
    values: np.ndarray
    sides: Sides = "one-sided"
    frequency_unit: FrequencyUnit = "linear"

    def __post_init__(self) -> None:
        f = np.asarray(self.frequencies, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if f.shape != v.shape or f.ndim != 1:
            raise ValueError("frequencies and values must be 1-D arrays of equal length")
        if np.any(np.diff(f) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        if np.any(v < 0):
            raise ValueError("spectral values must be nonnegative")
        if self.sides not in ("one-sided", "two-sided"):
            raise ValueError(f"unknown sides tag {self.sides!r}")
        if self.frequency_unit not in ("linear", "angular"):
            raise ValueError(f"unknown frequency unit {self.frequency_unit!r}")
        f.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "values", v)

    def converted(
        self, sides: Sides | None = None, frequency_unit: FrequencyUnit | None = None
    ) -> "SpectralDensity":
        """Re-express under other conventions, preserving the total power.

        Linear<->angular rescales the frequency axis only (the spectral
        value at corresponding points is unchanged because the angular
        convention carries a 1/2pi in its inversion integral); one<->two
        sided halves/doubles the values away from f=0.
        """
        sides = sides or self.sides
        frequency_unit = frequency_unit or self.frequency_unit
        f, v = self.frequencies, self.values.copy()
        if frequency_unit != self.frequency_unit:
            f = f * (2.0 * math.pi) if frequency_unit == "angular" else f / (2.0 * math.pi)
        if sides != self.sides:
            scale = 0.5 if sides == "two-sided" else 2.0
            nonzero = f != 0
            v[nonzero] = v[nonzero] * scale
        return SpectralDensity(f, v, sides, frequency_unit)


def _thermal_ratio(omega: np.ndarray | float, temperature: float) -> np.ndarray | float:
    return HBAR * omega / (K_B * temperature)


def bose_einstein(omega: np.ndarray | float, temperature: float) -> np.ndarray | float:
    """Mean photon number per mode, 1 / (exp(hbar w / k_B T) - 1)."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    omega = np.asarray(omega, dtype=np.float64)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive (the w=0 occupation diverges)")
    with np.errstate(over="ignore"):  # exp overflow means occupation 0
        result = 1.0 / np.expm1(_thermal_ratio(omega, temperature))
    return float(result) if result.ndim == 0 else result


def psd_nyquist_quantum(f: np.ndarray | float, spec: ResistorSpec) -> np.ndarray | float:
    """Quantum resistor voltage PSD in V**2/Hz (one-sided, linear)."""
    f = np.asarray(f, dtype=np.float64)
    if np.any(f <= 0):
        raise ValueError("frequency must be positive")
    x = H * f / (K_B * spec.temperature)
    with np.errstate(over="ignore"):  # exp overflow: the tail is 0
        result = 4.0 * spec.resistance * H * f / np.expm1(x)
    return float(result) if result.ndim == 0 else result


def psd_white_classical(spec: ResistorSpec) -> float:
    """White (low-frequency) limit 4 R k_B T in V**2/Hz."""
    return 4.0 * spec.resistance * K_B * spec.temperature


def variance_quantum_total(spec: ResistorSpec) -> float:
    """Total voltage variance 2 R (pi k_B T)**2 / (3 h) in V**2."""
    return 2.0 * spec.resistance * (math.pi * K_B * spec.temperature) ** 2 / (3.0 * H)


def variance_band_limited(
    spec: ResistorSpec, df: float, convention: Literal["nyquist", "einstein"] = "nyquist"
) -> float:
    """Band-limited white-noise variance over bandwidth df.

    The default follows the 4 R k_B T df white PSD; the "einstein"
    convention returns the band-limited fluctuation estimate 2 R k_B T df.
    """
    if df < 0:
        raise ValueError("bandwidth must be >= 0")
    if convention == "nyquist":
        return psd_white_classical(spec) * df
    if convention == "einstein":
        return 2.0 * spec.resistance * K_B * spec.temperature * df
    raise ValueError(f"unknown convention {convention!r}")


def _ou_path(
    decay_per_step: float,
    kick: float,
    steps: int,
    rng: np.random.Generator,
    x0: float = 0.0,
) -> np.ndarray:
    """x[n+1] = decay * x[n] + kick * z[n], run with a linear filter."""
    z = rng.standard_normal(steps)
    zi = np.array([decay_per_step * x0])
    out, _ = lfilter([kick], [1.0, -decay_per_step], z, zi=zi)
    return out


def simulate_rc(
    circuit: RcCircuit, dt: float, steps: int, rng: np.random.Generator
) -> TimeSeries:
    """Euler-Maruyama voltage trajectory of the thermal RC circuit.

    Integrates R dq/dt = -q/C + xi with <xi xi'> = 2 R k_B T delta, starting
    from an uncharged capacitor; returns V = q/C after each step.
    """
    tau = circuit.tau
    if dt > tau / 100.0:
        raise ValueError("timestep exceeds RC/100")
    if steps < 10 * tau / dt:
        raise ValueError("steps must cover at least 10 relaxation times")
    lam = 2.0 * circuit.resistance * K_B * circuit.temperature
    decay = 1.0 - dt / tau
    kick = math.sqrt(lam * dt) / circuit.resistance
    q = _ou_path(decay, kick, steps, rng)
    return TimeSeries(dt, q / circuit.capacitance)


def psd_rc_lorentzian(omega: np.ndarray | float, circuit: RcCircuit) -> np.ndarray | float:
    """RC voltage PSD 2 R k_B T / (1 + (RC w)**2), two-sided in angular w."""
    omega = np.asarray(omega, dtype=np.float64)
    result = (
        2.0
        * circuit.resistance
        * K_B
        * circuit.temperature
        / (1.0 + (circuit.tau * omega) ** 2)
    )
    return float(result) if result.ndim == 0 else result


def simulate_brownian(
    particle: LangevinParticle,
    v0: float,
    dt: float,
    steps: int,
    rng: np.random.Generator,
) -> TimeSeries:
    """Euler-Maruyama velocity trajectory of the Brownian particle.

    Integrates m dv/dt = -m gamma v + xi with <xi xi'> = 2 m gamma k_B T
    delta, starting from velocity v0.
    """
    if dt > 1.0 / (100.0 * particle.gamma):
        raise ValueError("timestep exceeds 1/(100 gamma)")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    lam = 2.0 * particle.mass * particle.gamma * K_B * particle.temperature
    decay = 1.0 - particle.gamma * dt
    kick = math.sqrt(lam * dt) / particle.mass
    v = _ou_path(decay, kick, steps, rng, x0=v0)
    return TimeSeries(dt, v)


def fdt_gamma_from_autocorrelation(
    xi_autocorr_integral: float, mass: float, temperature: float
) -> float:
    """Friction rate from the fluctuation side of the classical FDT.

    gamma = integral of <xi(t) xi(t+tau)> over tau, divided by 2 m k_B T.
    """
    if xi_autocorr_integral <= 0 or mass <= 0 or temperature <= 0:
        raise ValueError("all inputs must be positive")
    return xi_autocorr_integral / (2.0 * mass * K_B * temperature)


def qfdt_current_psd(
    omega: np.ndarray | float, re_admittance: float, temperature: float
) -> np.ndarray | float:
    """Quantum FDT current PSD hbar w coth(hbar w / 2 k_B T) Re Y."""
    if re_admittance < 0:
        raise ValueError("Re Y must be >= 0")
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    omega = np.asarray(omega, dtype=np.float64)
    half = _thermal_ratio(omega, temperature) / 2.0
    # hbar w / tanh(x) evaluates to the exact 2 k_B T limit as x -> 0; only
    # w = 0 itself needs the explicit limit.
    with np.errstate(invalid="ignore", divide="ignore"):
        result = np.where(
            omega == 0.0,
            2.0 * K_B * temperature * re_admittance,
            HBAR * omega / np.tanh(half) * re_admittance,
        )
    return float(result) if result.ndim == 0 else result


def psd_transmission_line(
    omega: np.ndarray | float, resistance: float, temperature: float
) -> np.ndarray | float:
    """Emission-branch line voltage PSD 2 R hbar w / (1 - exp(-hbar w/k_B T))."""
    omega = np.asarray(omega, dtype=np.float64)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive for the one-sided branch")
    x = _thermal_ratio(omega, temperature)
    result = 2.0 * resistance * HBAR * omega / (-np.expm1(-x))
    return float(result) if result.ndim == 0 else result


def psd_transmission_line_absorption(
    omega: np.ndarray | float, resistance: float, temperature: float
) -> np.ndarray | float:
    """Absorption branch, i.e. the PSD evaluated at -w for positive w."""
    omega = np.asarray(omega, dtype=np.float64)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive for the one-sided branch")
    x = _thermal_ratio(omega, temperature)
    result = 2.0 * resistance * HBAR * omega / np.expm1(x)
    return float(result) if result.ndim == 0 else result


def psd_transmission_line_symmetrized(
    omega: np.ndarray | float, resistance: float, temperature: float
) -> np.ndarray | float:
    """Symmetrized line PSD 2 R hbar w coth(hbar w / 2 k_B T)."""
    omega = np.asarray(omega, dtype=np.float64)
    half = _thermal_ratio(omega, temperature) / 2.0
    with np.errstate(invalid="ignore", divide="ignore"):
        result = np.where(
            omega == 0.0,
            4.0 * resistance * K_B * temperature,
            2.0 * resistance * HBAR * omega / np.tanh(half),
        )
    return float(result) if result.ndim == 0 else result


def mean_mode_energy(omega: np.ndarray | float, temperature: float) -> np.ndarray | float:
    """Oscillator mean energy per mode (<n> + 1/2) hbar w."""
    n = np.asarray(bose_einstein(omega, temperature))
    result = (n + 0.5) * HBAR * np.asarray(omega, dtype=np.float64)
    return float(result) if result.ndim == 0 else result


_COLOR_EXPONENTS = {-1: "blue", 0: "white", 1: "pink", 2: "brown", 3: "black"}


def colored_noise(
    exponent_n: int, length: int, dt: float, rng: np.random.Generator
) -> TimeSeries:
    """Gaussian noise shaped so that S(f) is proportional to 1/f**n.

    Supported exponents: -1 (blue), 0 (white), 1 (pink), 2 (brown),
    3 (black).  The DC bin is zeroed.  ``length`` must be a power of two
    >= 256.
    """
    if exponent_n not in _COLOR_EXPONENTS:
        raise ValueError(f"unsupported exponent {exponent_n}; pick one of {sorted(_COLOR_EXPONENTS)}")
    if length < 256 or length & (length - 1):
        raise ValueError("length must be a power of two >= 256")
    white = rng.standard_normal(length)
    spectrum = np.fft.rfft(white)
    f = np.fft.rfftfreq(length, dt)
    spectrum[0] = 0.0
    spectrum[1:] = spectrum[1:] * f[1:] ** (-exponent_n / 2.0)
    return TimeSeries(dt, np.fft.irfft(spectrum, n=length))


def periodogram(ts: TimeSeries) -> SpectralDensity:
    """One-sided rectangular-window periodogram (linear frequency).

    The sample mean is removed first, so the Parseval identity
    sum(S) * df = population variance holds exactly.
    """
    x = ts.samples
    n = len(x)
    if n < 2:
        raise ValueError("need at least 2 samples")
    spectrum = np.fft.rfft(x - x.mean())
    two_sided = ts.dt * np.abs(spectrum) ** 2 / n
    one_sided = two_sided.copy()
    if n % 2 == 0:
        one_sided[1:-1] *= 2.0  # Nyquist bin is unpaired
    else:
        one_sided[1:] *= 2.0
    f = np.fft.rfftfreq(n, ts.dt)
    return SpectralDensity(f, one_sided, "one-sided", "linear")


def density_of_states(
    d: int, polarizations: int, group_velocity: float, length: float, omega: float
) -> float:
    """Debye-dispersion density of states per unit angular frequency.

    g(w) = Np (l / 2 pi)**d (1/vg) s1 (w/vg)**(d-1) with s1 the unit
    hypersphere surface 2 pi**(d/2) / Gamma(d/2).
    """
    if d not in (1, 2, 3):
        raise ValueError("dimension must be 1, 2 or 3")
    if min(polarizations, group_velocity, length, omega) <= 0:
        raise ValueError("all parameters must be positive")
    s1 = 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)
    return (
        polarizations
        * (length / (2.0 * math.pi)) ** d
        * s1
        * (omega / group_velocity) ** (d - 1)
        / group_velocity
    )

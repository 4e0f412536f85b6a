"""Acceptance suite: one test per release criterion, each printing a
pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

Every tolerance is fixed here, not calibrated: sequence structure is exact,
closed forms are checked against quadrature at 1e-6, simulators against
analytic statistics at their stated percentages, protocol statistics at
3-sigma binomial/multinomial bounds, and the CLI at byte identity.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from noisecomm import cli
from noisecomm.entropy import (
    Distribution,
    extractor_epsilon_log2,
    generate_extractor_matrix,
    hierarchy_check,
    poisson_entropies,
)
from noisecomm.noisephys import (
    HBAR,
    K_B,
    LangevinParticle,
    RcCircuit,
    ResistorSpec,
    bose_einstein,
    fdt_gamma_from_autocorrelation,
    periodogram,
    psd_nyquist_quantum,
    psd_transmission_line,
    psd_transmission_line_absorption,
    psd_white_classical,
    qfdt_current_psd,
    simulate_brownian,
    simulate_rc,
    variance_quantum_total,
)
from noisecomm.prbs import (
    generate_prbs,
    circular_autocorrelation,
    mls_from_prbs,
    mls_sequence,
    polynomial_table,
)
from noisecomm.qkd import (
    Basis,
    LinkParams,
    TwoPhotonState,
    bb84_session,
    bbm92_measure,
    key_rate,
    optimal_distance,
    qber,
    KeyRateParams,
)
from noisecomm.spread import add_awgn, convolve, despread, identify_impulse_response, spread

PAPER_LINK = LinkParams(0.2, 8.5e-7, 0.1, 0.045)


def report(number: int, description: str) -> None:
    print(f"\nacceptance criterion {number}: PASS - {description}")


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_mls_structure():
    with Stopwatch() as clock:
        for poly in polynomial_table():
            if poly.degree > 12:
                continue
            n = poly.period
            bits = generate_prbs(poly, 1, n)
            mls = mls_from_prbs(bits)
            assert mls.period == n
            assert abs(int(mls.chips.sum())) == 1
            r = circular_autocorrelation(mls)
            assert r[0] == n
            assert np.all(r[1:] == -1)
        # period 511 for the order-9 register specifically, by state cycle
        order9 = polynomial_table()[8]
        stream = generate_prbs(order9, 1, 2 * 511)
        assert np.array_equal(stream[:511], stream[511:])
        assert not any(
            np.array_equal(stream[:p], stream[p : 2 * p]) and 511 % p == 0
            for p in (7, 73)  # proper divisors of 511
        )
    assert clock.elapsed < 10.0
    report(1, f"MLS period/balance/two-valued autocorrelation, orders 1-12 in {clock.elapsed:.1f}s")


def test_criterion_02_dsss_roundtrip_and_identification():
    with Stopwatch() as clock:
        rng = np.random.default_rng(20240)
        code = mls_sequence(9)
        message = rng.integers(0, 2, 10_000)
        received = add_awgn(spread(message, code), 0.5, rng)
        result = despread(received, code)
        errors = int(np.sum(result.bits != message))
        assert errors == 0

        h_true = rng.normal(size=5)
        response = convolve(h_true, np.tile(code.chips.astype(float), 3))
        h_est = identify_impulse_response(code, response, 5)
        assert np.max(np.abs(h_est - h_true)) < 1e-2
    assert clock.elapsed < 30.0
    report(2, f"10^4-bit round trip error-free at sigma=0.5; 5-tap FIR within 1e-2 in {clock.elapsed:.1f}s")


def test_criterion_03_thermal_noise_formulas():
    h = 6.62607015e-34

    for resistance, temperature in [(50.0, 300.0), (1.0, 4.2), (1e3, 77.0), (10.0, 1000.0), (330.0, 30.0)]:
        spec = ResistorSpec(resistance, temperature)
        scale = K_B * temperature / h  # frequency where hf = kT

        def integrand(u, _spec=spec, _scale=scale):
            if u <= 0:
                return psd_white_classical(_spec) * _scale  # f->0 limit
            return float(psd_nyquist_quantum(u * _scale, _spec)) * _scale

        quadrature, _ = quad(integrand, 0, np.inf)
        assert abs(quadrature / variance_quantum_total(spec) - 1.0) < 1e-6

    spec = ResistorSpec(1.0, 300.0)
    for x in np.logspace(-6, -2, 17):
        f = x * K_B * 300.0 / 6.62607015e-34
        ratio = psd_nyquist_quantum(f, spec) / psd_white_classical(spec)
        assert abs(ratio - (1.0 - x / 2.0)) < 0.1 * x**2
    report(3, "quantum PSD quadrature matches 2R(pi kT)^2/3h at 1e-6; low-f expansion O(x^2)")


def test_criterion_04_rc_langevin():
    with Stopwatch() as clock:
        circuit = RcCircuit(1e3, 1e-9, 300.0)
        dt = circuit.tau / 200.0
        ts = simulate_rc(circuit, dt, 2_000_000, np.random.default_rng(4040))
        v = ts.samples
        theory = K_B * 300.0 / 1e-9
        assert theory == pytest.approx(4.14e-12, rel=1e-2)
        sample_var = float(v.var())
        assert abs(sample_var / theory - 1.0) < 0.05

        lag = 200  # dt = tau/200, so this is one relaxation time
        centered = v - v.mean()
        acf = float(np.mean(centered[:-lag] * centered[lag:]))
        assert abs(acf / (sample_var / math.e) - 1.0) < 0.10

        psd = periodogram(ts)
        corner = 1.0 / (2.0 * math.pi * circuit.tau)
        band = (psd.frequencies > 0) & (psd.frequencies <= 0.35 * corner)
        plateau_two_sided = float(psd.values[band].mean()) / 2.0
        assert abs(plateau_two_sided / (2.0 * 1e3 * K_B * 300.0) - 1.0) < 0.15
    assert clock.elapsed < 60.0
    report(4, f"RC variance 5%, lag-RC autocorrelation 10%, plateau 15% in {clock.elapsed:.1f}s")


def test_criterion_05_brownian_fdt():
    particle = LangevinParticle.from_temperature(1.0, 1.0, 1.0 / K_B)  # kT = 1
    dt = 1.0 / 200.0
    steps = 650
    paths = np.empty((10_000, steps))
    for i in range(10_000):
        rng = np.random.default_rng((505, i))
        paths[i] = simulate_brownian(particle, 3.0, dt, steps, rng).samples
    t = dt * np.arange(1, steps + 1)
    for target in (0.1, 1.0, 3.0):
        idx = int(np.searchsorted(t, target))
        expected = 1.0 - math.exp(-2.0 * t[idx])  # (D/gamma)(1 - e^{-2 gamma t})
        assert abs(paths[:, idx].var() / expected - 1.0) < 0.05

    lam = 2.0 * 1.0 * 1.0 * K_B * (1.0 / K_B)
    rng = np.random.default_rng(506)
    xi = math.sqrt(lam / dt) * rng.standard_normal(200_000)
    integral = dt * (np.mean(xi * xi) + 2 * sum(np.mean(xi[:-k] * xi[k:]) for k in range(1, 6)))
    gamma_est = fdt_gamma_from_autocorrelation(float(integral), 1.0, 1.0 / K_B)
    assert abs(gamma_est - 1.0) < 0.10
    report(5, "ensemble variance growth within 5% at t={0.1,1,3}/gamma; FDT gamma within 10%")


def test_criterion_06_quantum_spectral_laws():
    t = 300.0
    for x in np.logspace(-6, 3, 91):
        w = x * K_B * t / HBAR
        coth_form = qfdt_current_psd(w, 1.0, t)
        occupancy_form = 2.0 * (bose_einstein(w, t) + 0.5) * HBAR * w
        assert abs(coth_form / occupancy_form - 1.0) < 1e-12

    w_classical = 1e-4 * K_B * t / HBAR
    assert abs(
        psd_transmission_line(w_classical, 50.0, t) / (2.0 * 50.0 * K_B * t) - 1.0
    ) < 1e-3

    for x in np.logspace(-3, np.log10(200), 25):
        w = x * K_B * t / HBAR
        ratio = psd_transmission_line(w, 50.0, t) / psd_transmission_line_absorption(w, 50.0, t)
        assert abs(ratio / math.exp(x) - 1.0) < 1e-9
    report(6, "coth identity 1e-12 on [1e-6,1e3]; classical limit 0.1%; detailed balance 1e-9")


def test_criterion_07_qkd_models():
    for n, expected in ((1, 21.7), (2, 10.86), (4, 5.43)):
        assert abs(optimal_distance(n, 0.2) - expected) < 0.05

    assert qber(0.0, PAPER_LINK) == pytest.approx(1.888e-4, abs=1e-7)

    grid = np.arange(0.0, 400.0, 1.0)
    for e_d in (0.01, 0.1, 0.2, 0.4):
        params = KeyRateParams.from_detector_error(e_d)
        rates = [key_rate(length, PAPER_LINK, params).bits_per_symbol for length in grid]
        assert rates[0] > 0.0
        assert all(b <= a + 1e-18 for a, b in zip(rates, rates[1:]))
        assert rates[-1] == 0.0  # dead at finite distance
        first_zero = next(i for i, r in enumerate(rates) if r == 0.0)
        assert 0 < first_zero < len(grid)
    report(7, "L_opt 21.7/10.86/5.43 km; QBER(0)=1.888e-4; K(L) curves positive, decreasing, finite cutoff")


def test_criterion_08_qkd_protocol_properties():
    with Stopwatch() as clock:
        clean = bb84_session(100_000, "none", np.random.default_rng(808))
        assert clean.error_fraction == 0.0
        assert np.array_equal(clean.sifted_key_alice, clean.sifted_key_bob)

        tapped = bb84_session(100_000, "intercept-resend", np.random.default_rng(809))
        sigma = math.sqrt(0.25 * 0.75 / tapped.sifted_length)
        assert abs(tapped.error_fraction - 0.25) <= 3.0 * sigma

        same_bits = {
            (TwoPhotonState.PSI_PLUS, Basis.PLUS): False,
            (TwoPhotonState.PSI_PLUS, Basis.CROSS): True,
            (TwoPhotonState.PSI_MINUS, Basis.PLUS): False,
            (TwoPhotonState.PSI_MINUS, Basis.CROSS): False,
            (TwoPhotonState.PHI_PLUS, Basis.PLUS): True,
            (TwoPhotonState.PHI_PLUS, Basis.CROSS): True,
            (TwoPhotonState.PHI_MINUS, Basis.PLUS): True,
            (TwoPhotonState.PHI_MINUS, Basis.CROSS): False,
        }
        trials = 4000
        combo = 0
        for state in TwoPhotonState:
            for basis_a in Basis:
                for basis_b in Basis:
                    combo += 1
                    rng = np.random.default_rng(810 + combo)
                    counts = np.zeros((2, 2))
                    for _ in range(trials):
                        a, b = bbm92_measure(state, basis_a, basis_b, rng)
                        counts[a, b] += 1
                    freq = counts / trials
                    if basis_a is basis_b:
                        expected = (
                            np.array([[0.5, 0.0], [0.0, 0.5]])
                            if same_bits[(state, basis_a)]
                            else np.array([[0.0, 0.5], [0.5, 0.0]])
                        )
                    else:
                        expected = np.full((2, 2), 0.25)
                    for i in (0, 1):
                        for j in (0, 1):
                            p = expected[i, j]
                            if p == 0.0:
                                assert counts[i, j] == 0
                            else:
                                bound = 3.0 * math.sqrt(p * (1.0 - p) / trials)
                                assert abs(freq[i, j] - p) <= bound
    assert clock.elapsed < 30.0
    report(8, f"identical clean keys; intercept error 25% within 3 sigma; Born tables 4x4 in {clock.elapsed:.1f}s")


def test_criterion_09_entropy():
    values = poisson_entropies(2e4)
    assert values.shannon_bits == pytest.approx(9.191, abs=0.01)
    assert values.min_bits == pytest.approx(8.469, abs=0.01)

    rng = np.random.default_rng(909)
    for _ in range(1000):
        size = int(rng.integers(2, 12))
        dist = Distribution.normalized(rng.random(size) + 1e-9)
        assert hierarchy_check(dist, [1.5, 2.0, 5.0], [0.3, 0.7]).all_pass

    matrix = generate_extractor_matrix(polynomial_table()[8], 1, 4, 12)
    inputs = ((np.arange(4096)[:, None] >> np.arange(12)) & 1).astype(np.uint8)
    outputs = (inputs @ matrix.bits.T) % 2
    codes = outputs @ (1 << np.arange(4))
    counts = np.bincount(codes, minlength=16)
    assert np.all(counts == 256)  # exactly uniform over 2^4 outputs

    assert extractor_epsilon_log2(2000, 400, 0.529, 1.0) == -329.0
    report(9, "Poisson entropies (9.191, 8.469) +/- 0.01; hierarchy x1000; exhaustive uniformity; log2(eps) = -329")


CLI_COMMANDS = [
    ["mls", "--order", "9", "--seed", "1"],
    ["dsss", "roundtrip", "--order", "7", "--bits", "100", "--sigma", "0.4", "--trials", "2", "--seed", "7"],
    ["dsss", "identify", "--order", "8", "--taps", "0.9,0.3,-0.2", "--sigma", "0.01", "--seed", "2"],
    ["noise", "psd", "--model", "nyquist-quantum", "--points", "25"],
    ["noise", "psd", "--model", "white", "--points", "10"],
    ["noise", "psd", "--model", "lorentzian", "--points", "25"],
    ["noise", "psd", "--model", "tline", "--points", "25"],
    ["noise", "psd", "--model", "tline-symmetrized", "--points", "25"],
    ["noise", "psd", "--model", "qfdt", "--points", "25"],
    ["noise", "sim", "--model", "rc", "--steps", "3000", "--seed", "11"],
    ["noise", "sim", "--model", "brownian", "--steps", "2500", "--seed", "12"],
    ["noise", "colored", "--n", "1", "--len", "512", "--seed", "13"],
    ["noise", "quantum", "--points", "12"],
    ["noise", "dos", "--points", "12"],
    ["qkd", "bb84", "--n", "5000", "--eve", "intercept", "--seed", "14"],
    ["qkd", "bbm92", "--n", "600", "--state", "psi-", "--seed", "15"],
    ["qkd", "curves", "--lmax", "30", "--step", "3"],
    ["qkd", "qubit", "--theta", "1.2", "--phi", "0.4"],
    ["entropy", "poisson", "--mean", "20000"],
]


def test_criterion_10_cli_reproducibility(tmp_path):
    probs = tmp_path / "probs.txt"
    probs.write_text("0.4\n0.3\n0.2\n0.1\n")
    bits = tmp_path / "bits.txt"
    bits.write_text("01" * 150)
    commands = CLI_COMMANDS + [
        ["entropy", "dist", "--probs", str(probs), "--q", "2", "--qprime", "0.5"],
        ["entropy", "extract", "--l", "200", "--k", "40", "--in", str(bits), "--seed", "5"],
    ]
    for index, command in enumerate(commands):
        first = tmp_path / f"{index}_a.csv"
        second = tmp_path / f"{index}_b.csv"
        assert cli.main(command + ["--out", str(first)]) == 0, command
        assert cli.main(command + ["--out", str(second)]) == 0, command
        assert first.read_bytes() == second.read_bytes(), command
        if command[:2] == ["entropy", "extract"]:
            report_a = tmp_path / f"{index}_a.report.csv"
            report_b = tmp_path / f"{index}_b.report.csv"
            assert report_a.read_bytes() == report_b.read_bytes()
    report(10, f"{len(commands)} subcommand invocations byte-identical across reruns")

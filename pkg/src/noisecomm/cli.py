"""Command-line front end: every model and simulator as a subcommand.

Each subcommand writes one CSV table (metadata as leading ``#`` comment
lines, then a header row, then numeric rows at 17 significant digits) and
optionally renders a PNG figure next to it.  Output is a pure function of
the flags and the seed: the global seed expands into labeled per-component
substreams, so identical invocations produce byte-identical files.

Exit codes: 0 success, 1 contract violation (a module precondition was
rejected), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import zlib
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, entropy, noisephys, prbs, qkd, spread

# Where each public module operation is exercised from (self-test anchor:
# tests assert this registry covers every entry in the modules' OPERATIONS).
OPERATION_COVERAGE = {
    "prbs.lfsr_step": "mls",
    "prbs.generate_prbs": "mls",
    "prbs.mls_from_prbs": "mls",
    "prbs.circular_autocorrelation": "mls",
    "prbs.polynomial_table": "mls",
    "prbs.crest_factor": "mls",
    "spread.spread": "dsss roundtrip",
    "spread.despread": "dsss roundtrip",
    "spread.add_awgn": "dsss roundtrip",
    "spread.convolve": "dsss identify",
    "spread.identify_impulse_response": "dsss identify",
    "noisephys.bose_einstein": "noise quantum",
    "noisephys.psd_nyquist_quantum": "noise psd --model nyquist-quantum",
    "noisephys.psd_white_classical": "noise psd --model white",
    "noisephys.variance_quantum_total": "noise psd --model nyquist-quantum",
    "noisephys.variance_band_limited": "noise psd --model white",
    "noisephys.simulate_rc": "noise sim --model rc",
    "noisephys.psd_rc_lorentzian": "noise psd --model lorentzian",
    "noisephys.simulate_brownian": "noise sim --model brownian",
    "noisephys.fdt_gamma_from_autocorrelation": "noise sim --model brownian",
    "noisephys.qfdt_current_psd": "noise psd --model qfdt",
    "noisephys.psd_transmission_line": "noise psd --model tline",
    "noisephys.psd_transmission_line_symmetrized": "noise psd --model tline-symmetrized",
    "noisephys.mean_mode_energy": "noise quantum",
    "noisephys.colored_noise": "noise colored",
    "noisephys.periodogram": "noise sim --psd-out",
    "noisephys.density_of_states": "noise dos",
    "qkd.qubit_rotate": "qkd qubit",
    "qkd.bb84_session": "qkd bb84",
    "qkd.bbm92_measure": "qkd bbm92",
    "qkd.attenuation": "qkd curves",
    "qkd.optimal_distance": "qkd curves",
    "qkd.qber": "qkd curves",
    "qkd.binary_entropy": "qkd curves",
    "qkd.key_rate": "qkd curves",
    "entropy.shannon_entropy": "entropy dist",
    "entropy.renyi_entropy": "entropy dist",
    "entropy.min_entropy": "entropy dist",
    "entropy.hierarchy_check": "entropy dist",
    "entropy.poisson_entropies": "entropy poisson",
    "entropy.extract": "entropy extract",
    "entropy.generate_extractor_matrix": "entropy extract",
    "entropy.extractor_epsilon_log2": "entropy extract",
}


def derive_rng(seed: int, label: str) -> np.random.Generator:
    """Labeled substream of the global seed; stable across subcommands."""
    key = zlib.crc32(label.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path: str, header: list[str], rows, metadata: dict) -> None:
    lines = [f"# {key} = {_fmt(value)}" for key, value in metadata.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def _meta(args, command: str, **extra) -> dict:
    meta = {"command": command, "version": __version__}
    if hasattr(args, "seed"):
        meta["seed"] = args.seed
    meta.update(extra)
    return meta


def _png_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


def load_config(path: str) -> dict[str, str]:
    """Parse a ``key = value`` config file; '#' lines are comments."""
    entries: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: malformed line (expected key=value): {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ValueError(f"{path}:{lineno}: malformed line (empty key or value)")
        entries[key] = value
    return entries


def _apply_config(parser, args, argv: list[str]):
    """Inject config-file values as subcommand defaults, then re-parse.

    Command-line flags win because the re-parse still sees them; unknown
    keys are warned about and skipped.
    """
    entries = load_config(args.config)
    if not entries:
        return args
    sub = args._subparser
    actions = {a.dest: a for a in sub._actions if a.option_strings}
    defaults = {}
    for key, raw in entries.items():
        dest = key.replace("-", "_")
        action = actions.get(dest)
        if action is None:
            print(f"warning: unknown config key {key!r} ignored", file=sys.stderr)
            continue
        if action.nargs == 0:  # store_true style flags
            defaults[dest] = raw.lower() in ("1", "true", "yes", "on")
        else:
            convert = action.type or str
            defaults[dest] = convert(raw)
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


# ---------------------------------------------------------------- mls

def _register_seed(seed: int, poly: prbs.GaloisPolynomial) -> int:
    """Fold the global 64-bit seed into a valid nonzero register seed."""
    return seed % poly.period + 1


def cmd_mls(args) -> int:
    poly = prbs.table_polynomial(args.order)
    bits = prbs.generate_prbs(poly, _register_seed(args.seed, poly), poly.period)
    mls = prbs.mls_from_prbs(bits)
    autocorr = prbs.circular_autocorrelation(mls)
    crest = prbs.crest_factor(mls) if mls.period > 1 else "undefined"
    meta = _meta(
        args,
        "mls",
        order=args.order,
        polynomial_taps="-".join(str(t) for t in poly.taps),
        period=mls.period,
        chip_sum=int(mls.chips.sum(dtype=np.int64)),
        crest_factor=crest,
        table_size=len(prbs.polynomial_table()),
    )
    rows = zip(range(mls.period), mls.chips, autocorr)
    write_csv(args.out, ["n", "chip", "R"], rows, meta)
    if args.plot:
        from . import plots

        plots.plot_mls(mls.chips, autocorr, args.order, _png_path(args.out))
    return 0


# ---------------------------------------------------------------- dsss

def _roundtrip_trial(job: tuple[int, int, int, float, int]) -> tuple[int, float]:
    trial, order, nbits, sigma, seed = job
    rng = derive_rng(seed, f"dsss.roundtrip.{trial}")
    code = prbs.mls_sequence(order)
    message = rng.integers(0, 2, nbits)
    received = spread.add_awgn(spread.spread(message, code), sigma, rng)
    recovered = spread.despread(received, code)
    ber = float(np.mean(recovered.bits != message))
    return trial, ber


def cmd_dsss_roundtrip(args) -> int:
    jobs = [
        (trial, args.order, args.bits, args.sigma, args.seed)
        for trial in range(args.trials)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_roundtrip_trial, jobs))
    else:
        results = [_roundtrip_trial(job) for job in jobs]
    meta = _meta(
        args,
        "dsss roundtrip",
        order=args.order,
        bits=args.bits,
        sigma=args.sigma,
        trials=args.trials,
        mean_ber=float(np.mean([ber for _, ber in results])),
    )
    write_csv(args.out, ["trial", "ber"], results, meta)
    return 0


def cmd_dsss_identify(args) -> int:
    h_true = np.array([float(t) for t in args.taps.split(",")])
    probe = prbs.mls_sequence(args.order)
    excitation = np.tile(probe.chips.astype(np.float64), args.periods)
    response = spread.convolve(h_true, excitation)
    if args.sigma > 0:
        response = spread.add_awgn(
            response, args.sigma, derive_rng(args.seed, "dsss.identify")
        )
    h_est = spread.identify_impulse_response(probe, response, len(h_true))
    meta = _meta(
        args,
        "dsss identify",
        order=args.order,
        sigma=args.sigma,
        periods=args.periods,
        max_abs_error=float(np.max(np.abs(h_est - h_true))),
    )
    write_csv(args.out, ["m", "h_true", "h_est"], zip(range(len(h_true)), h_true, h_est), meta)
    if args.plot:
        from . import plots

        plots.plot_taps(h_true, h_est, _png_path(args.out))
    return 0


# ---------------------------------------------------------------- noise

def cmd_noise_psd(args) -> int:
    f = np.logspace(np.log10(args.fmin), np.log10(args.fmax), args.points)
    omega = 2.0 * np.pi * f
    extra: dict = {}
    if args.model == "nyquist-quantum":
        spec = noisephys.ResistorSpec(args.R, args.T)
        values = noisephys.psd_nyquist_quantum(f, spec)
        convention = "one-sided linear, V^2/Hz"
        extra["total_variance_V2"] = noisephys.variance_quantum_total(spec)
    elif args.model == "white":
        spec = noisephys.ResistorSpec(args.R, args.T)
        values = np.full_like(f, noisephys.psd_white_classical(spec))
        convention = "one-sided linear, V^2/Hz"
        extra["band_limited_variance_V2"] = noisephys.variance_band_limited(spec, args.fmax)
    elif args.model == "lorentzian":
        circuit = noisephys.RcCircuit(args.R, args.C, args.T)
        values = noisephys.psd_rc_lorentzian(omega, circuit)
        convention = "two-sided angular, V^2 s (evaluated at w = 2 pi f)"
        extra["corner_frequency_Hz"] = 1.0 / (2.0 * np.pi * circuit.tau)
    elif args.model == "tline":
        values = noisephys.psd_transmission_line(omega, args.R, args.T)
        convention = "emission branch, angular, V^2 s (evaluated at w = 2 pi f)"
    elif args.model == "tline-symmetrized":
        values = noisephys.psd_transmission_line_symmetrized(omega, args.R, args.T)
        convention = "symmetrized, angular, V^2 s (evaluated at w = 2 pi f)"
    elif args.model == "qfdt":
        values = noisephys.qfdt_current_psd(omega, args.reY, args.T)
        convention = "symmetrized, angular, A^2 s (evaluated at w = 2 pi f)"
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown model {args.model}")
    meta = _meta(args, f"noise psd {args.model}", R=args.R, T=args.T, convention=convention, **extra)
    write_csv(args.out, ["f", "S"], zip(f, np.asarray(values)), meta)
    if args.plot:
        from . import plots

        plots.plot_curve(f, np.asarray(values), "f [Hz]", "S", args.model, _png_path(args.out), loglog=True)
    return 0


def cmd_noise_sim(args) -> int:
    if args.model == "rc":
        circuit = noisephys.RcCircuit(args.R, args.C, args.T)
        dt = args.dt if args.dt else circuit.tau / 200.0
        rng = derive_rng(args.seed, "noise.sim.rc")
        ts = noisephys.simulate_rc(circuit, dt, args.steps, rng)
        theory = noisephys.K_B * args.T / args.C
        extra = {"stationary_variance_theory": theory, "units": "V"}
    else:
        particle = noisephys.LangevinParticle.from_temperature(args.m, args.gamma, args.T)
        dt = args.dt if args.dt else 1.0 / (200.0 * args.gamma)
        rng = derive_rng(args.seed, "noise.sim.brownian")
        ts = noisephys.simulate_brownian(particle, args.v0, dt, args.steps, rng)
        theory = noisephys.K_B * args.T / args.m
        # FDT closure: estimate gamma back from a sampled noise history.
        lam = 2.0 * args.m * args.gamma * noisephys.K_B * args.T
        xi = np.sqrt(lam / dt) * rng.standard_normal(min(args.steps, 100_000))
        integral = float(np.mean(xi**2) * dt)
        gamma_est = noisephys.fdt_gamma_from_autocorrelation(integral, args.m, args.T)
        extra = {
            "stationary_variance_theory": theory,
            "fdt_gamma_estimate": gamma_est,
            "units": "m/s",
        }
    sample_var = float(ts.samples.var())
    meta = _meta(
        args,
        f"noise sim {args.model}",
        dt=ts.dt,
        steps=args.steps,
        stationary_variance_sample=sample_var,
        **extra,
    )
    write_csv(args.out, ["t", "value"], zip(ts.times, ts.samples), meta)
    if args.psd_out:
        psd = noisephys.periodogram(ts)
        write_csv(
            args.psd_out,
            ["f", "S"],
            zip(psd.frequencies, psd.values),
            _meta(args, f"noise sim {args.model} periodogram", convention="one-sided linear"),
        )
    if args.plot:
        from . import plots

        plots.plot_trace(ts.times, ts.samples, extra["units"], _png_path(args.out))
    return 0


def cmd_noise_colored(args) -> int:
    rng = derive_rng(args.seed, f"noise.colored.{args.n}")
    ts = noisephys.colored_noise(args.n, args.len, args.dt, rng)
    meta = _meta(
        args,
        "noise colored",
        exponent=args.n,
        length=args.len,
        dt=args.dt,
        sample_variance=float(ts.samples.var()),
    )
    write_csv(args.out, ["t", "value"], zip(ts.times, ts.samples), meta)
    if args.psd_out:
        psd = noisephys.periodogram(ts)
        write_csv(
            args.psd_out,
            ["f", "S"],
            zip(psd.frequencies, psd.values),
            _meta(args, "noise colored periodogram", exponent=args.n),
        )
    if args.plot:
        from . import plots

        plots.plot_trace(ts.times, ts.samples, "value", _png_path(args.out))
    return 0


def cmd_noise_quantum(args) -> int:
    f = np.logspace(np.log10(args.fmin), np.log10(args.fmax), args.points)
    omega = 2.0 * np.pi * f
    occupation = noisephys.bose_einstein(omega, args.T)
    energy = noisephys.mean_mode_energy(omega, args.T)
    meta = _meta(args, "noise quantum", T=args.T)
    write_csv(args.out, ["f", "n_bose", "mode_energy_J"], zip(f, occupation, energy), meta)
    if args.plot:
        from . import plots

        plots.plot_curve(f, energy, "f [Hz]", "E [J]", "mean mode energy", _png_path(args.out), loglog=True)
    return 0


def cmd_noise_dos(args) -> int:
    omega = np.linspace(args.wmin, args.wmax, args.points)
    g = [
        noisephys.density_of_states(args.d, args.polarizations, args.vg, args.ell, w)
        for w in omega
    ]
    meta = _meta(args, "noise dos", d=args.d, polarizations=args.polarizations, vg=args.vg, ell=args.ell)
    write_csv(args.out, ["omega", "g"], zip(omega, g), meta)
    if args.plot:
        from . import plots

        plots.plot_curve(omega, np.asarray(g), "omega [rad/s]", "g", "density of states", _png_path(args.out))
    return 0


# ---------------------------------------------------------------- qkd

def cmd_qkd_bb84(args) -> int:
    mode = "intercept-resend" if args.eve == "intercept" else "none"
    rng = derive_rng(args.seed, "qkd.bb84")
    result = qkd.bb84_session(args.n, mode, rng)
    meta = _meta(args, "qkd bb84", n=args.n, eve=args.eve)
    rows = [
        (
            result.sent,
            result.sifted_length,
            result.matched_basis_fraction,
            result.error_fraction,
        )
    ]
    write_csv(
        args.out,
        ["sent", "sifted_length", "matched_basis_fraction", "error_fraction"],
        rows,
        meta,
    )
    return 0


_STATE_NAMES = {s.value: s for s in qkd.TwoPhotonState}


def cmd_qkd_bbm92(args) -> int:
    state = _STATE_NAMES[args.state]
    rng = derive_rng(args.seed, "qkd.bbm92")
    counts = qkd.bbm92_session(args.n, state, rng)
    rows = []
    for (ba, bb), joint in sorted(counts.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)):
        rows.append(
            (ba.name, bb.name, joint[0, 0], joint[0, 1], joint[1, 0], joint[1, 1])
        )
    meta = _meta(args, "qkd bbm92", n=args.n, state=args.state)
    write_csv(args.out, ["basis_a", "basis_b", "n00", "n01", "n10", "n11"], rows, meta)
    return 0


def cmd_qkd_curves(args) -> int:
    link = qkd.LinkParams(args.alpha0, args.pe, args.mu, args.eta)
    detector_errors = [float(x) for x in args.ed.split(",")]
    distances = np.arange(0.0, args.lmax + args.step / 2.0, args.step)
    qbers = [qkd.qber(length, link) for length in distances]
    rates = {}
    for e_d in detector_errors:
        params = qkd.KeyRateParams.from_detector_error(e_d, args.omega)
        rates[f"K_ed{e_d:g}"] = [
            qkd.key_rate(length, link, params).bits_per_symbol for length in distances
        ]
    meta = _meta(
        args,
        "qkd curves",
        alpha0=args.alpha0,
        pe=args.pe,
        mu=args.mu,
        eta=args.eta,
        omega=args.omega,
        attenuation_at_lmax=qkd.attenuation(args.lmax, args.alpha0),
        L_opt_n1_km=qkd.optimal_distance(1, args.alpha0),
        L_opt_n2_km=qkd.optimal_distance(2, args.alpha0),
        L_opt_n4_km=qkd.optimal_distance(4, args.alpha0),
    )
    header = ["L", "QBER", *rates.keys()]
    rows = zip(distances, qbers, *rates.values())
    write_csv(args.out, header, rows, meta)
    if args.plot:
        from . import plots

        plots.plot_qkd_curves(
            distances, np.asarray(qbers), {k: np.asarray(v) for k, v in rates.items()}, _png_path(args.out)
        )
    return 0


def cmd_qkd_qubit(args) -> int:
    state = qkd.qubit_rotate(args.theta, args.phi, np.array([1.0, 0.0]))
    meta = _meta(args, "qkd qubit", theta=args.theta, phi=args.phi)
    rows = [
        (i, state[i].real, state[i].imag, abs(state[i]) ** 2) for i in range(2)
    ]
    write_csv(args.out, ["component", "re", "im", "probability"], rows, meta)
    return 0


# ---------------------------------------------------------------- entropy

def _read_probabilities(path: str) -> np.ndarray:
    values = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for token in line.replace(",", " ").split():
            values.append(float(token))
    return np.asarray(values)


def cmd_entropy_dist(args) -> int:
    dist = entropy.Distribution(_read_probabilities(args.probs))
    q_values = [float(x) for x in args.q.split(",")]
    qp_values = [float(x) for x in args.qprime.split(",")]
    rows = [("shannon", "", entropy.shannon_entropy(dist)), ("min", "", entropy.min_entropy(dist))]
    for q in q_values + qp_values:
        rows.append(("renyi", f"{q:g}", entropy.renyi_entropy(dist, q)))
    report = entropy.hierarchy_check(dist, q_values, qp_values)
    meta = _meta(args, "entropy dist", outcomes=len(dist.probabilities), hierarchy_all_pass=report.all_pass)
    for check in report.checks:
        meta[f"hierarchy[{check.label}]"] = f"passed={str(check.passed).lower()} slack={check.slack:.6g}"
    write_csv(args.out, ["measure", "parameter", "bits"], rows, meta)
    return 0


def cmd_entropy_poisson(args) -> int:
    result = entropy.poisson_entropies(args.mean)
    bits = args.bits_per_symbol
    rows = [
        ("shannon", result.shannon_bits, result.shannon_bits / bits),
        ("min", result.min_bits, result.min_bits / bits),
    ]
    meta = _meta(args, "entropy poisson", mean=args.mean, bits_per_symbol=bits)
    write_csv(args.out, ["quantity", "bits_per_symbol_value", "bits_per_bit"], rows, meta)
    return 0


def _read_bits(path: str) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8")
    bits = [int(c) for c in text if c in "01"]
    return np.asarray(bits, dtype=np.uint8)


def cmd_entropy_extract(args) -> int:
    raw = _read_bits(args.infile)
    if len(raw) < args.l:
        raise ValueError(f"need at least l={args.l} input bits, got {len(raw)}")
    poly = prbs.table_polynomial(args.poly)
    matrix = entropy.generate_extractor_matrix(
        poly, _register_seed(args.seed, poly), args.k, args.l
    )
    output = entropy.extract(matrix, raw[: args.l])
    Path(args.out).write_text("".join(str(int(b)) for b in output) + "\n", encoding="ascii")
    log2_eps = entropy.extractor_epsilon_log2(args.l, args.k, args.s, args.sprime)
    eps = entropy.extractor_epsilon(args.l, args.k, args.s, args.sprime)
    report_path = args.report or str(Path(args.out).with_suffix(".report.csv"))
    meta = _meta(args, "entropy extract", poly_order=args.poly, input_bits=len(raw))
    rows = [
        (args.l, args.k, args.s, args.sprime, log2_eps, eps if eps is not None else "underflow")
    ]
    write_csv(report_path, ["l", "k", "s", "s_prime", "log2_epsilon", "epsilon"], rows, meta)
    return 0


# ---------------------------------------------------------------- parser

def _add_common(parser, default_out: str, plot: bool = False) -> None:
    parser.add_argument("--seed", type=int, default=0, help="global 64-bit seed")
    parser.add_argument("--out", type=str, default=default_out, help="output CSV path")
    parser.add_argument("--config", type=str, default=None, help="key=value config file")
    parser.add_argument("--jobs", type=int, default=1, help="parallel Monte-Carlo workers")
    if plot:
        parser.add_argument("--plot", action="store_true", help="render a PNG next to the CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisecomm",
        description="Pseudo-noise, thermal/quantum noise, QKD and entropy toolkit",
    )
    parser.add_argument("--version", action="version", version=f"noisecomm {__version__}")
    top = parser.add_subparsers(dest="command", required=True)

    p = top.add_parser("mls", help="maximum-length sequence and its autocorrelation")
    p.add_argument("--order", type=int, default=9, help="polynomial order (1..15)")
    _add_common(p, "mls.csv", plot=True)
    p.set_defaults(func=cmd_mls, _subparser=p)

    dsss = top.add_parser("dsss", help="direct-sequence spread spectrum").add_subparsers(
        dest="subcommand", required=True
    )
    p = dsss.add_parser("roundtrip", help="spread/despread Monte-Carlo bit error rate")
    p.add_argument("--order", type=int, default=9)
    p.add_argument("--bits", type=int, default=1000, help="message bits per trial")
    p.add_argument("--sigma", type=float, default=0.3, help="per-chip noise std dev")
    p.add_argument("--trials", type=int, default=1)
    _add_common(p, "dsss_roundtrip.csv")
    p.set_defaults(func=cmd_dsss_roundtrip, _subparser=p)

    p = dsss.add_parser("identify", help="MLS channel impulse-response identification")
    p.add_argument("--order", type=int, default=9)
    p.add_argument("--taps", type=str, default="0.9,0.3,-0.2", help="true channel taps")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--periods", type=int, default=3, help="probe periods sent")
    _add_common(p, "dsss_identify.csv", plot=True)
    p.set_defaults(func=cmd_dsss_identify, _subparser=p)

    noise = top.add_parser("noise", help="noise models and simulators").add_subparsers(
        dest="subcommand", required=True
    )
    p = noise.add_parser("psd", help="closed-form power spectral densities")
    p.add_argument(
        "--model",
        choices=["nyquist-quantum", "white", "lorentzian", "tline", "tline-symmetrized", "qfdt"],
        default="nyquist-quantum",
    )
    p.add_argument("--R", type=float, default=50.0, help="resistance [ohm]")
    p.add_argument("--T", type=float, default=300.0, help="temperature [K]")
    p.add_argument("--C", type=float, default=1e-9, help="capacitance [F] (lorentzian)")
    p.add_argument("--reY", type=float, default=0.02, help="Re Y [S] (qfdt)")
    p.add_argument("--fmin", type=float, default=1e3)
    p.add_argument("--fmax", type=float, default=1e13)
    p.add_argument("--points", type=int, default=200)
    _add_common(p, "noise_psd.csv", plot=True)
    p.set_defaults(func=cmd_noise_psd, _subparser=p)

    p = noise.add_parser("sim", help="Langevin simulators (RC circuit, Brownian velocity)")
    p.add_argument("--model", choices=["rc", "brownian"], default="rc")
    p.add_argument("--R", type=float, default=1e3, help="resistance [ohm] (rc)")
    p.add_argument("--C", type=float, default=1e-9, help="capacitance [F] (rc)")
    p.add_argument("--T", type=float, default=300.0, help="temperature [K]")
    p.add_argument("--m", type=float, default=1.0, help="mass [kg] (brownian)")
    p.add_argument("--gamma", type=float, default=1.0, help="friction rate [1/s] (brownian)")
    p.add_argument("--v0", type=float, default=0.0, help="initial velocity (brownian)")
    p.add_argument("--dt", type=float, default=0.0, help="timestep [s]; 0 = tau/200")
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--psd-out", type=str, default=None, help="also write the periodogram CSV here")
    _add_common(p, "noise_sim.csv", plot=True)
    p.set_defaults(func=cmd_noise_sim, _subparser=p)

    p = noise.add_parser("colored", help="1/f^n colored-noise synthesis")
    p.add_argument("--n", type=int, default=1, help="spectral exponent in {-1,0,1,2,3}")
    p.add_argument("--len", type=int, default=65536, help="samples (power of two >= 256)")
    p.add_argument("--dt", type=float, default=1.0)
    p.add_argument("--psd-out", type=str, default=None)
    _add_common(p, "noise_colored.csv", plot=True)
    p.set_defaults(func=cmd_noise_colored, _subparser=p)

    p = noise.add_parser("quantum", help="Bose occupation and mean mode energy")
    p.add_argument("--T", type=float, default=300.0)
    p.add_argument("--fmin", type=float, default=1e9)
    p.add_argument("--fmax", type=float, default=1e15)
    p.add_argument("--points", type=int, default=200)
    _add_common(p, "noise_quantum.csv", plot=True)
    p.set_defaults(func=cmd_noise_quantum, _subparser=p)

    p = noise.add_parser("dos", help="Debye density of states")
    p.add_argument("--d", type=int, default=3, help="dimension (1, 2 or 3)")
    p.add_argument("--polarizations", type=int, default=2)
    p.add_argument("--vg", type=float, default=3e8, help="group velocity [m/s]")
    p.add_argument("--ell", type=float, default=1.0, help="system length [m]")
    p.add_argument("--wmin", type=float, default=1e12)
    p.add_argument("--wmax", type=float, default=1e14)
    p.add_argument("--points", type=int, default=200)
    _add_common(p, "noise_dos.csv", plot=True)
    p.set_defaults(func=cmd_noise_dos, _subparser=p)

    qkd_sub = top.add_parser("qkd", help="quantum key distribution").add_subparsers(
        dest="subcommand", required=True
    )
    p = qkd_sub.add_parser("bb84", help="prepare-and-measure session with sifting")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--eve", choices=["none", "intercept"], default="none")
    _add_common(p, "qkd_bb84.csv")
    p.set_defaults(func=cmd_qkd_bb84, _subparser=p)

    p = qkd_sub.add_parser("bbm92", help="entangled-pair joint measurement statistics")
    p.add_argument("--n", type=int, default=20_000)
    p.add_argument("--state", choices=sorted(_STATE_NAMES), default="psi+")
    _add_common(p, "qkd_bbm92.csv")
    p.set_defaults(func=cmd_qkd_bbm92, _subparser=p)

    p = qkd_sub.add_parser("curves", help="QBER and secure key rate vs distance")
    p.add_argument("--lmax", type=float, default=150.0)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--ed", type=str, default="0.01,0.1,0.2,0.4", help="detector error rates")
    p.add_argument("--alpha0", type=float, default=0.2, help="fiber attenuation [dB/km]")
    p.add_argument("--pe", type=float, default=8.5e-7, help="error probability per clock cycle")
    p.add_argument("--mu", type=float, default=0.1, help="mean photons per pulse")
    p.add_argument("--eta", type=float, default=0.045, help="detection efficiency")
    p.add_argument("--omega", type=float, default=1.0, help="single-photon detection fraction")
    _add_common(p, "qkd_curves.csv", plot=True)
    p.set_defaults(func=cmd_qkd_curves, _subparser=p)

    p = qkd_sub.add_parser("qubit", help="Bloch-sphere rotation applied to |0>")
    p.add_argument("--theta", type=float, default=np.pi / 2)
    p.add_argument("--phi", type=float, default=0.0)
    _add_common(p, "qkd_qubit.csv")
    p.set_defaults(func=cmd_qkd_qubit, _subparser=p)

    ent = top.add_parser("entropy", help="entropy measures and randomness extraction").add_subparsers(
        dest="subcommand", required=True
    )
    p = ent.add_parser("dist", help="entropies of a probability file")
    p.add_argument("--probs", type=str, required=True, help="file of probabilities")
    p.add_argument("--q", type=str, default="2", help="Renyi orders > 1 (comma list)")
    p.add_argument("--qprime", type=str, default="0.5", help="Renyi orders in (0,1)")
    _add_common(p, "entropy_dist.csv")
    p.set_defaults(func=cmd_entropy_dist, _subparser=p)

    p = ent.add_parser("poisson", help="Poisson photon-count entropies")
    p.add_argument("--mean", type=float, default=2e4)
    p.add_argument("--bits-per-symbol", type=int, default=16)
    _add_common(p, "entropy_poisson.csv")
    p.set_defaults(func=cmd_entropy_poisson, _subparser=p)

    p = ent.add_parser("extract", help="GF(2) randomness extraction of a bit file")
    p.add_argument("--l", type=int, default=2000, help="input bits consumed")
    p.add_argument("--k", type=int, default=400, help="output bits produced")
    p.add_argument("--poly", type=int, default=9, help="table polynomial order for the matrix")
    p.add_argument("--in", dest="infile", type=str, required=True, help="input bit file")
    p.add_argument("--s", type=float, default=0.529, help="per-bit input min-entropy")
    p.add_argument("--sprime", type=float, default=1.0, help="per-bit target entropy")
    p.add_argument("--report", type=str, default=None, help="report CSV path")
    _add_common(p, "extracted.bits")
    p.set_defaults(func=cmd_entropy_extract, _subparser=p)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            args = _apply_config(parser, args, argv)
        if getattr(args, "seed", 0) < 0:
            raise ValueError("seed must be a nonnegative 64-bit integer")
        return args.func(args)
    except ValueError as exc:
        print(f"noisecomm: contract violation: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"noisecomm: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Figure rendering for the CLI report path (PNG next to the CSV)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, out_path: str) -> None:
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def plot_mls(chips: np.ndarray, autocorr: np.ndarray, order: int, out_path: str) -> None:
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(8, 6))
    n = np.arange(len(chips))
    ax0.step(n[:256], chips[:256], where="post", lw=0.8)
    ax0.set_xlabel("n")
    ax0.set_ylabel("chip")
    ax0.set_title(f"MLS chips, order {order} (first {min(256, len(chips))})")
    ax1.plot(np.arange(len(autocorr)), autocorr, lw=0.8)
    ax1.set_xlabel("lag n")
    ax1.set_ylabel("R[n]")
    ax1.set_title("circular autocorrelation")
    _save(fig, out_path)


def plot_taps(h_true: np.ndarray, h_est: np.ndarray, out_path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    m = np.arange(len(h_true))
    ax.stem(m - 0.1, h_true, linefmt="C0-", markerfmt="C0o", basefmt=" ", label="true")
    ax.stem(m + 0.1, h_est, linefmt="C1-", markerfmt="C1x", basefmt=" ", label="estimated")
    ax.set_xlabel("tap m")
    ax.set_ylabel("h[m]")
    ax.legend()
    ax.set_title("channel impulse response identification")
    _save(fig, out_path)


def plot_curve(
    x: np.ndarray,
    y: np.ndarray,
    xlabel: str,
    ylabel: str,
    title: str,
    out_path: str,
    loglog: bool = False,
) -> None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if loglog:
        ax.loglog(x, y, lw=1.0)
    else:
        ax.plot(x, y, lw=1.0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    _save(fig, out_path)


def plot_trace(times: np.ndarray, values: np.ndarray, ylabel: str, out_path: str) -> None:
    fig, ax = plt.subplots(figsize=(8, 4))
    stride = max(1, len(times) // 20000)
    ax.plot(times[::stride], values[::stride], lw=0.5)
    ax.set_xlabel("t [s]")
    ax.set_ylabel(ylabel)
    _save(fig, out_path)


def plot_qkd_curves(
    distances: np.ndarray,
    qbers: np.ndarray,
    rates: dict[str, np.ndarray],
    out_path: str,
) -> None:
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7.5, 7))
    ax0.semilogy(distances, qbers, lw=1.2)
    ax0.set_xlabel("L [km]")
    ax0.set_ylabel("QBER")
    ax0.set_title("sifted-key error rate vs distance")
    for label, k in rates.items():
        ax1.plot(distances, k, lw=1.2, label=label)
    ax1.set_xlabel("L [km]")
    ax1.set_ylabel("K [bits/symbol]")
    ax1.set_title("secure key rate vs distance")
    ax1.legend()
    _save(fig, out_path)

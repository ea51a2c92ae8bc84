"""Matplotlib figures for the scan and track outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 11,
    "axes.labelsize": 12,
    "legend.fontsize": 10,
    "lines.linewidth": 1.8,
    "savefig.bbox": "tight",
    # fixed hash salt keeps SVG element ids reproducible
    "svg.hashsalt": "parity-radar",
}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def fringe_figure(phases, parity, classical, path, mean_photons=None):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6.0, 3.8))
        label = "parity" if mean_photons is None else rf"parity, $\bar n = {mean_photons:g}$"
        ax.plot(phases, parity, color="tab:green", label=label)
        ax.plot(phases, classical, "--", color="tab:red", label="intensity difference")
        ax.set_xlabel(r"phase $\varphi$ (rad)")
        ax.set_ylabel("signal")
        ax.set_ylim(-0.05, 1.05)
        ax.legend(loc="upper right")
        return _save(fig, path)


def angle_figure(theta, signal, theta_hat, path):
    with plt.rc_context(STYLE):
        fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(6.0, 5.5), sharex=True)
        ax0.plot(np.asarray(theta) * 1e3, signal, color="tab:green")
        ax0.set_ylabel("dark-port parity")
        ax1.plot(np.asarray(theta) * 1e3, np.asarray(theta_hat) * 1e3, ".", color="tab:blue")
        ax1.plot(np.asarray(theta) * 1e3, np.asarray(theta) * 1e3, ":", color="0.5")
        ax1.set_xlabel(r"$\Theta$ (mrad)")
        ax1.set_ylabel(r"$\hat\Theta$ (mrad)")
        return _save(fig, path)


def sweep_figure(photons, fwhm, gaussian, path):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.8))
        ax.loglog(photons, fwhm, "o", label="measured FWHM")
        ax.loglog(photons, gaussian, "-", label=r"$2\sqrt{2\ln 2}/\sqrt{\bar n}$")
        ax.set_xlabel(r"$\bar n$")
        ax.set_ylabel("FWHM (rad)")
        ax.legend()
        return _save(fig, path)


def track_figure(time, range_err, sigma_range, theta, phi, path):
    with plt.rc_context(STYLE):
        fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(6.0, 5.5), sharex=True)
        ax0.plot(time, np.asarray(range_err) * 1e3, lw=0.8)
        s = np.asarray(sigma_range) * 1e3
        ax0.fill_between(time, -s, s, color="0.85", label=r"$\pm\delta R_Q$")
        ax0.set_ylabel(r"$\hat R - R$ (mm)")
        ax0.legend(loc="upper right")
        ax1.plot(time, np.asarray(theta) * 1e3, label=r"$\hat\Theta$")
        ax1.plot(time, np.asarray(phi) * 1e3, label=r"$\hat\Phi$")
        ax1.set_xlabel("time (s)")
        ax1.set_ylabel("angle (mrad)")
        ax1.legend(loc="upper right")
        return _save(fig, path)

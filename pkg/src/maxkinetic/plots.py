"""Optional report figures rendered next to the CSV outputs."""

from __future__ import annotations

import numpy as np


def _axes():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def plot_spectral(profile, path):
    plt = _axes()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(profile.p_grid, profile.lambda_values)
    ax1.set_xlabel("p")
    ax1.set_ylabel("lambda(p)")
    ax2.plot(profile.p_grid, profile.mu_values)
    if np.isfinite(profile.p0):
        ax2.axvline(profile.p0, ls="--", c="gray")
    ax2.set_xlabel("p")
    ax2.set_ylabel("mu(p)")
    ax2.set_title(f"class {profile.class_tag}")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_trajectory(traj, path):
    plt = _axes()
    fig, ax = plt.subplots(figsize=(6, 4))
    for t, snap in zip(traj.times, traj.snapshots):
        ax.semilogx(snap.x[1:], snap.values[1:], label=f"t={t:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    if len(traj.times) <= 8:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_profile(prof, path):
    plt = _axes()
    fig, ax = plt.subplots(figsize=(6, 4))
    x = prof.profile.x
    ax.semilogx(x[1:], prof.profile.values[1:], label="psi")
    ax.semilogx(x[1:], np.exp(-x[1:] ** prof.p), "--",
                label="exp(-x^p) start")
    ax.set_xlabel("x")
    ax.set_ylabel("psi")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_moments(table, path):
    plt = _axes()
    fig, ax = plt.subplots(figsize=(6, 4))
    s = np.asarray(table.s_values, dtype=float)
    m = np.asarray(table.m_values, dtype=float)
    good = np.isfinite(m)
    ax.semilogy(s[good], m[good], "o-")
    for si, fin in zip(table.s_values, table.finite):
        if not fin:
            ax.axvline(si, color="red", alpha=0.3)
    ax.set_xlabel("s")
    ax.set_ylabel("m_s")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_density(dist, path):
    plt = _axes()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(dist.v, dist.F)
    ax.set_xlabel("v")
    ax.set_ylabel("F(v)")
    ax.set_title(f"mass {dist.mass:.6f}")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)

"""Matplotlib figures written next to the tabular CLI output."""

from __future__ import annotations

from collections import defaultdict

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_lambda_profile(profile, n, k, path, title=None):
    """Stacked-code dimension per Frobenius depth, against the two reference curves."""
    idx = list(range(len(profile)))
    length = n
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(idx, profile, "o-", label="observed")
    ax.plot(idx, [min(length, k * (i + 1)) for i in idx], "--", label="random code")
    ax.plot(idx, [min(length, k + i) for i in idx], ":", label="Gabidulin code")
    ax.axhline(length, color="grey", lw=0.8)
    ax.set_xlabel("i")
    ax.set_ylabel("dim Lambda_i")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_bench(rows, path):
    """Median total attack time against k^3 (n+a+1-k)^3, log-log."""
    groups = defaultdict(list)
    for row in rows:
        if row["phase"] == "total" and row["success"]:
            groups[int(row["complexity"])].append(float(row["wall_time"]))
    xs = sorted(groups)
    ys = [sorted(groups[x])[len(groups[x]) // 2] for x in xs]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(xs, ys, "o-", label="median attack time")
    if xs:
        ref = ys[0] / xs[0]
        ax.loglog(xs, [ref * x for x in xs], "--", label="linear in k^3 (n+a+1-k)^3")
    ax.set_xlabel("k^3 (n+a+1-k)^3")
    ax.set_ylabel("seconds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def log_slope(xs, ys):
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])

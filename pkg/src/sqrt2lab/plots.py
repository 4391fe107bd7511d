"""Render the toolkit's report data as matplotlib figures.

Each function takes the same rows a CLI command emits and writes one
figure to ``path``.  matplotlib is imported lazily with the Agg backend so
data-only runs never touch it.
"""

from __future__ import annotations

import math
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: str) -> None:
    import matplotlib.pyplot as plt

    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def orbit_figure(rows: Sequence[dict], path: str) -> None:
    """Two panels: log10 of the iterate, and the running even fraction."""
    plt = _pyplot()
    steps = [r["step"] for r in rows]
    logs = [math.log10(r["value"]) if r["value"] > 0 else 0.0 for r in rows]
    p0 = [r["even_count"] / (r["step"] + 1) for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(steps, logs, lw=0.8)
    ax1.set_ylabel("log10 iterate")
    ax2.plot(steps, p0, lw=0.8, color="tab:orange")
    ax2.set_ylabel("even fraction so far")
    ax2.set_xlabel("step")
    _save(fig, path)


def growth_figure(rows: Sequence[dict], path: str) -> None:
    """Per-step growth factor against the step index."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot([r["r"] for r in rows], [r["growth"] for r in rows], lw=0.8)
    ax.axhline(1.0, color="grey", lw=0.6, ls="--")
    ax.set_xlabel("step r")
    ax.set_ylabel("iterate^(1/r)")
    _save(fig, path)


def counting_figure(rows: Sequence[dict], path: str) -> None:
    """Counting function of cycling starts."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step([r["n"] for r in rows], [r["cycling_so_far"] for r in rows], where="post", lw=0.9)
    ax.set_xlabel("n")
    ax.set_ylabel("cycling starts <= n")
    _save(fig, path)


def cycles_figure(rows: Sequence[dict], path: str) -> None:
    """Pre-period (blue) and period (red) of each cycling start."""
    plt = _pyplot()
    cyc = [r for r in rows if r["verdict"] == "cycling"]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.scatter([r["n"] for r in cyc], [r["pre_period"] for r in cyc], s=4, color="tab:blue", label="pre-period")
    ax.scatter([r["n"] for r in cyc], [r["period"] for r in cyc], s=4, color="tab:red", label="period")
    ax.set_xlabel("n")
    ax.legend()
    _save(fig, path)


def probability_figure(rows: Sequence[dict], path: str) -> None:
    """Odds probability per step count, with its limiting value."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot([r["r"] for r in rows], [float(r["decimal"]) for r in rows], marker="o", ms=3, lw=0.8)
    ax.axhline((8 + 3 * math.sqrt(2)) / 23, color="grey", lw=0.6, ls="--")
    ax.set_xlabel("r")
    ax.set_ylabel("P(iterate r is odd)")
    _save(fig, path)


def trajectory_figure(rows: Sequence[dict], path: str) -> None:
    """Phase portrait of a simulated trajectory."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 5))
    ax.plot([r["x"] for r in rows], [r["v"] for r in rows], lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("v")
    _save(fig, path)


def melnikov_figure(rows: Sequence[dict], path: str) -> None:
    """Melnikov distance across the phase offset grid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot([r["t0"] for r in rows], [r["M"] for r in rows], lw=0.9)
    ax.axhline(0.0, color="grey", lw=0.6, ls="--")
    ax.set_xlabel("t0")
    ax.set_ylabel("M(t0)")
    _save(fig, path)


def sensitivity_figure(rows: Sequence[dict], path: str) -> None:
    """Twin-run phase separation over time (log scale)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ts = [r["t"] for r in rows]
    seps = [max(r["separation"], 1e-18) for r in rows]
    ax.semilogy(ts, seps, lw=0.9)
    ax.set_xlabel("t")
    ax.set_ylabel("phase separation")
    _save(fig, path)


def borderline_figure(rows: Sequence[dict], path: str) -> None:
    """Running geometric mean of f(r)/r."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot([r["n"] for r in rows], [r["geometric_mean"] for r in rows], lw=0.9)
    ax.axhline(1.0, color="grey", lw=0.6, ls="--")
    ax.set_xlabel("n")
    ax.set_ylabel("(prod f(r)/r)^(1/n)")
    _save(fig, path)

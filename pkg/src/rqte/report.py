"""Figures rendered from scenario tables.

Uses the object-oriented Matplotlib API with the Agg canvas so nothing
touches global pyplot state or needs a display.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .scenarios import Table

GOLDEN = (math.sqrt(5) - 1.0) / 2.0


def new_figure(width: float = 6.0, height: float | None = None) -> tuple[Figure, object]:
    fig = Figure(figsize=(width, height or width * GOLDEN), dpi=120)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    return fig, ax


def _col(table: Table, name):
    return np.asarray(table.column(name), dtype=float)


def plot_packet(table, ax):
    t = _col(table, "t")
    ax.plot(t, _col(table, "width_gamma"), label="central gamma")
    ax.plot(t, _col(table, "width_gamma1"), label="gamma = 1")
    ax.plot(t, _col(table, "width_schrodinger"), "--", label="Schrodinger")
    ax.set_xlabel("t")
    ax.set_ylabel("packet width")
    ax.legend(frameon=False)


def plot_levels(table, ax):
    n = _col(table, "n")
    ax.plot(n, _col(table, "lambda"), "o", label="computed")
    ref = "lambda_closed_form" if "lambda_closed_form" in table.columns else "lambda_resonance"
    ax.plot(n, _col(table, ref), "-", lw=0.8, label=ref.replace("_", " "))
    ax.set_xlabel("n")
    ax.set_ylabel("lambda_n")
    ax.legend(frameon=False)


def plot_residuals(table, ax):
    res = np.maximum(_col(table, "residual"), 1e-18)
    ax.bar(range(len(res)), res)
    ax.set_yscale("log")
    ax.set_xticks(range(len(res)))
    ax.set_xticklabels(table.column("relation"), rotation=90, fontsize=6)
    ax.set_ylabel("|residual|")


def plot_dispersion(table, ax):
    k = _col(table, "k")
    ax.plot(k, _col(table, "u"), ".", label="u(k)")
    ax.plot(k, _col(table, "E"), ".", label="E(k)")
    ax.set_xlabel("k")
    ax.legend(frameon=False)


def plot_string(table, ax):
    ls = _col(table, "l_s")
    ax.loglog(ls, _col(table, "T0"), "o-", label="T0")
    ax.loglog(ls, _col(table, "m"), "s-", label="m")
    ax.set_xlabel("l_s")
    ax.legend(frameon=False)


def plot_flowtest(table, ax):
    dt = _col(table, "dt")
    err = np.maximum(_col(table, "period_return_error"), 1e-18)
    ax.loglog(dt, err, "o-", label="period-return error")
    ax.loglog(dt, err[0] * (dt / dt[0]) ** 4, ":", label="dt^4")
    ax.set_xlabel("dt")
    ax.legend(frameon=False)


PLOTTERS = {
    "packet": plot_packet,
    "harmonic": plot_levels,
    "box": plot_levels,
    "dirac": plot_residuals,
    "dispersion": plot_dispersion,
    "string": plot_string,
    "flowtest": plot_flowtest,
}


def render(scenario: str, table: Table, path: Path) -> Path:
    fig, ax = new_figure()
    PLOTTERS[scenario](table, ax)
    ax.set_title(scenario)
    fig.tight_layout()
    fig.savefig(path)
    return path

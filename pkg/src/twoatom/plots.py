"""Figure rendering for trajectories and parameter sweeps.

Uses the Agg backend and writes straight to file; nothing here opens a
window, so the CLI stays usable over ssh and in batch jobs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import Surface, Trajectory

MEASURE_LABELS = {
    "concurrence": "C",
    "discord": "D",
    "geometric_discord": "G",
    "observable_bound": "G_obs",
}

_LINE_STYLES = {
    "concurrence": dict(color="tab:blue", linestyle="-"),
    "discord": dict(color="tab:red", linestyle="--"),
    "geometric_discord": dict(color="tab:green", linestyle="-."),
    "observable_bound": dict(color="tab:purple", linestyle=":"),
}


def render_trajectory(traj: Trajectory, path, measure_names=None) -> None:
    """Plot the selected measures of a trajectory against scaled time."""
    if measure_names is None:
        measure_names = tuple(MEASURE_LABELS)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for name in measure_names:
        ax.plot(traj.t, getattr(traj, name), label=MEASURE_LABELS[name],
                linewidth=1.6, **_LINE_STYLES[name])
    ax.set_xlabel(r"$\Gamma t$")
    ax.set_ylabel("correlation")
    ax.set_title(f"p = {traj.p:g}, kr = {traj.params.kr:g}" if traj.params.kr is not None
                 else f"p = {traj.p:g}")
    ax.grid(alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_surface(surf: Surface, path) -> None:
    """Heat map of one measure over the (t, p) plane."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    mesh = ax.pcolormesh(surf.t, surf.p_values, surf.values,
                         shading="auto", cmap="viridis", rasterized=True)
    fig.colorbar(mesh, ax=ax, label=MEASURE_LABELS.get(surf.measure, surf.measure))
    ax.set_xlabel(r"$\Gamma t$")
    ax.set_ylabel("p")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

"""Time sweeps of the correlation measures for the sqrt(p)|ee> + sqrt(1-p)|gg>
initial family, surfaces over (p, t), and detection of the points where the
concurrence vanishes or reappears.

Everything here rides on the analytic propagator, so single trajectory points
at arbitrary t are exact and cheap; event times are refined by bisection on
the propagator itself rather than on interpolated samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import CollectiveParams, propagate_collective, time_grid, validate_grid
from .measures import concurrence_x, measure_all_x
from .states import XState, collective_to_product, product_to_collective

DEFAULT_TRAJECTORY_STEPS = 1001
DEFAULT_TMAX = 10.0
DEFAULT_SURFACE_P_COUNT = 201
DEFAULT_SURFACE_T_COUNT = 401
ZERO_TOL = 1e-9
EVENT_REFINE_WIDTH = 1e-9

MEASURE_NAMES = ("concurrence", "discord", "geometric_discord", "observable_bound")


def initial_state(p: float) -> XState:
    """Density matrix of sqrt(p)|e_A e_B> + sqrt(1-p)|g_A g_B> as an XState."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return XState(
        rho11=p,
        rho22=0.0,
        rho33=0.0,
        rho44=1.0 - p,
        rho14=math.sqrt(p * (1.0 - p)),
        rho23=0.0,
    )


@dataclass(frozen=True)
class Trajectory:
    """Measures and X elements sampled along one evolution."""

    p: float
    params: CollectiveParams
    t: np.ndarray
    concurrence: np.ndarray
    discord: np.ndarray
    geometric_discord: np.ndarray
    observable_bound: np.ndarray
    rho11: np.ndarray
    rho22: np.ndarray
    rho33: np.ndarray
    rho44: np.ndarray
    rho14: np.ndarray
    rho23: np.ndarray


@dataclass(frozen=True)
class Surface:
    """One measure tabulated over a (p, t) rectangle; values[i, j] = m(p_i, t_j)."""

    measure: str
    p_values: np.ndarray
    t: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class EventReport:
    """Concurrence zero-crossing times plus discord extremum annotations.

    death_times: concurrence drops to zero; birth_times: concurrence becomes
    positive (revival or delayed birth); zero_intervals: maximal stretches
    with concurrence at zero; discord_extrema: (t, value, 'min'|'max').
    """

    death_times: list[float]
    birth_times: list[float]
    zero_intervals: list[tuple[float, float]]
    discord_extrema: list[tuple[float, float, str]]


def trajectory(p: float, params: CollectiveParams, grid: np.ndarray | None = None) -> Trajectory:
    """Propagate the p-family initial state and evaluate all measures on a grid."""
    if grid is None:
        grid = time_grid(DEFAULT_TMAX, DEFAULT_TRAJECTORY_STEPS)
    grid = np.asarray(grid, dtype=float)
    validate_grid(grid)
    c0 = product_to_collective(initial_state(p))

    n = grid.size
    cols = {name: np.empty(n) for name in MEASURE_NAMES}
    pops = {name: np.empty(n) for name in ("rho11", "rho22", "rho33", "rho44")}
    rho14 = np.empty(n, dtype=complex)
    rho23 = np.empty(n, dtype=complex)
    for k in range(n):
        x = collective_to_product(propagate_collective(c0, params, float(grid[k])))
        m = measure_all_x(x)
        cols["concurrence"][k] = m.concurrence
        cols["discord"][k] = m.discord
        cols["geometric_discord"][k] = m.geometric_discord
        cols["observable_bound"][k] = m.observable_bound
        pops["rho11"][k] = x.rho11
        pops["rho22"][k] = x.rho22
        pops["rho33"][k] = x.rho33
        pops["rho44"][k] = x.rho44
        rho14[k] = x.rho14
        rho23[k] = x.rho23
    return Trajectory(p=p, params=params, t=grid, rho14=rho14, rho23=rho23,
                      **cols, **pops)


def surface(
    measure: str,
    p_values: np.ndarray,
    params: CollectiveParams,
    grid: np.ndarray | None = None,
) -> Surface:
    """Tabulate one measure over a p x t rectangle.

    Each row is produced by the same code path as a standalone trajectory, so
    a surface row equals the corresponding trajectory column bit for bit.
    """
    if measure not in MEASURE_NAMES:
        raise ValueError(f"measure must be one of {MEASURE_NAMES}, got {measure!r}")
    p_values = np.asarray(p_values, dtype=float)
    if p_values.ndim != 1 or p_values.size == 0:
        raise ValueError("p_values must be a nonempty 1-D array")
    if np.any(np.diff(p_values) <= 0.0):
        raise ValueError("p_values must be strictly increasing")
    if p_values[0] < 0.0 or p_values[-1] > 1.0:
        raise ValueError("p_values must lie in [0, 1]")
    if grid is None:
        grid = time_grid(DEFAULT_TMAX, DEFAULT_SURFACE_T_COUNT)
    grid = np.asarray(grid, dtype=float)
    validate_grid(grid)

    values = np.empty((p_values.size, grid.size))
    for i, p in enumerate(p_values):
        values[i] = getattr(trajectory(float(p), params, grid), measure)
    return Surface(measure=measure, p_values=p_values, t=grid, values=values)


def _concurrence_at(c0, params: CollectiveParams, t: float) -> float:
    return concurrence_x(collective_to_product(propagate_collective(c0, params, t)))


def _bisect_crossing(f, lo: float, hi: float) -> float:
    """Bisect for the sign change of f on [lo, hi]; f(lo) and f(hi) differ in sign."""
    f_lo = f(lo)
    while hi - lo > EVENT_REFINE_WIDTH:
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == (f_lo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _local_extrema(t: np.ndarray, y: np.ndarray, min_prominence: float = 1e-9):
    """Interior local extrema of sampled data as (t, value, kind) tuples.

    Plateaus are collapsed to their first point; extrema whose height over the
    flanking reference points is below min_prominence are dropped.
    """
    d = np.diff(y)
    nz = np.nonzero(d)[0]
    if nz.size < 2:
        return []
    candidates = []
    for k in range(nz.size - 1):
        if d[nz[k]] > 0.0 > d[nz[k + 1]]:
            candidates.append((nz[k] + 1, "max"))
        elif d[nz[k]] < 0.0 < d[nz[k + 1]]:
            candidates.append((nz[k] + 1, "min"))
    marks = [0] + [m for m, _ in candidates] + [y.size - 1]
    out = []
    for j, (m, kind) in enumerate(candidates):
        left, right = marks[j], marks[j + 2]
        if kind == "max":
            prominence = y[m] - max(y[left], y[right])
        else:
            prominence = min(y[left], y[right]) - y[m]
        if prominence >= min_prominence:
            out.append((float(t[m]), float(y[m]), kind))
    return out


def detect_events(traj: Trajectory, zero_tol: float = ZERO_TOL) -> EventReport:
    """Locate concurrence deaths/births on a trajectory and refine them.

    The sampled concurrence marks which grid intervals contain a crossing of
    zero_tol; each crossing is then bisected on the analytic propagator.
    Transitions narrower than the grid spacing are invisible by construction.
    """
    t = traj.t
    if t.size < 2:
        raise ValueError("trajectory must have at least 2 points")
    c0 = product_to_collective(initial_state(traj.p))
    params = traj.params

    def excess(tau: float) -> float:
        return _concurrence_at(c0, params, tau) - zero_tol

    positive = traj.concurrence > zero_tol
    deaths: list[float] = []
    births: list[float] = []
    death_after: dict[int, float] = {}
    birth_after: dict[int, float] = {}
    for i in range(t.size - 1):
        if positive[i] and not positive[i + 1]:
            when = _bisect_crossing(excess, float(t[i]), float(t[i + 1]))
            deaths.append(when)
            death_after[i] = when
        elif not positive[i] and positive[i + 1]:
            when = _bisect_crossing(excess, float(t[i]), float(t[i + 1]))
            births.append(when)
            birth_after[i] = when

    intervals: list[tuple[float, float]] = []
    i = 0
    while i < t.size:
        if not positive[i]:
            j = i
            while j + 1 < t.size and not positive[j + 1]:
                j += 1
            start = float(t[0]) if i == 0 else death_after[i - 1]
            end = float(t[-1]) if j == t.size - 1 else birth_after[j]
            intervals.append((start, end))
            i = j + 1
        else:
            i += 1

    extrema = _local_extrema(t, traj.discord)
    return EventReport(
        death_times=deaths,
        birth_times=births,
        zero_intervals=intervals,
        discord_extrema=extrema,
    )


def cusp_ratio(t: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Largest slope discontinuity in sampled data, relative to local curvature.

    Slope jumps (second differences) at interior points are scanned for the
    maximum, which is then compared with the median jump among nearby points
    (offsets 3 to 8 on each side, skipping the immediate neighbors that share
    the kinked slope).  Smooth curvature cancels out of this ratio, so smooth
    data scores near 1 while a genuine kink scores large, growing as the grid
    is refined.  Returns (t_at_jump, ratio).
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size < 16:
        raise ValueError("need at least 16 samples to assess a slope jump")
    slopes = np.diff(y) / np.diff(t)
    jumps = np.abs(np.diff(slopes))  # jumps[k] is the slope change at t[k+1]
    k = int(np.argmax(jumps))
    nearby = [i for i in range(k - 8, k + 9) if 0 <= i < jumps.size and abs(i - k) >= 3]
    if len(nearby) < 4:
        raise ValueError("slope-jump maximum sits too close to the window edge")
    baseline = max(float(np.median(jumps[nearby])), 1e-300)
    return float(t[k + 1]), float(jumps[k] / baseline)

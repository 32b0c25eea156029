"""Correlation measures for two-qubit states: concurrence, quantum discord,
geometric discord, and the moment-based observable lower bound.

Each measure has a closed-form path for X-structured states and an independent
general path (Wootters eigenvalue construction, brute-force measurement
minimization, eigenvalue formula on the correlation matrix K).  The general
paths double as oracles for the fast paths.  Measurements are projective and
act on subsystem B unless side='A' is requested, which simply swaps the atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .states import (
    SIGMA_Y,
    X_STRUCTURE_TOL,
    XState,
    binary_entropy,
    bloch_decomposition,
    eigenvalues_x,
    is_x_state,
    partial_trace,
    swap_subsystems,
    validate_density_matrix,
    von_neumann_entropy,
)

MEASURE_CLAMP_TOL = 1e-9
RADICAND_TOL = 1e-12
DEFAULT_COARSE_GRID = (121, 241)
DEFAULT_REFINE_TOL = 1e-7

_LN2 = math.log(2.0)
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class MeasureSet:
    """The four correlation measures of one state, each in [0, 1]."""

    concurrence: float
    discord: float
    geometric_discord: float
    observable_bound: float


@dataclass(frozen=True)
class MeasurementDirection:
    """Unit vector (theta, phi) defining projectors (I +/- n.sigma)/2 on B."""

    theta: float
    phi: float


def _clamp_unit(value: float, what: str) -> float:
    if value < -MEASURE_CLAMP_TOL or value > 1.0 + MEASURE_CLAMP_TOL:
        raise ValueError(f"{what} = {value!r} outside [0, 1] beyond roundoff")
    return min(max(value, 0.0), 1.0)


# ---------------------------------------------------------------------------
# Concurrence
# ---------------------------------------------------------------------------

def concurrence_x(x: XState) -> float:
    """Concurrence of an X state: each block coherence competes against the
    geometric mean of the opposite block's populations; floored at zero."""
    outer_branch = 2.0 * (abs(x.rho14) - math.sqrt(max(x.rho22, 0.0) * max(x.rho33, 0.0)))
    inner_branch = 2.0 * (abs(x.rho23) - math.sqrt(max(x.rho11, 0.0) * max(x.rho44, 0.0)))
    return max(0.0, outer_branch, inner_branch)


def concurrence_general(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit state (spin-flip eigenvalue form).

    Uses the Hermitian arrangement sqrt(rho) rho_tilde sqrt(rho), which has the
    same spectrum as rho*rho_tilde but keeps the eigenproblem well conditioned
    when some of the four lambda_i are tiny.
    """
    rho = np.asarray(rho, dtype=complex)
    lam, vec = np.linalg.eigh(rho)
    sqrt_rho = (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T
    rho_tilde = _YY @ rho.conj() @ _YY
    mu = np.linalg.eigvalsh(sqrt_rho @ rho_tilde @ sqrt_rho)
    mu = np.sqrt(np.clip(mu, 0.0, None))
    return max(0.0, 2.0 * mu[-1] - mu.sum())


# ---------------------------------------------------------------------------
# Quantum discord
# ---------------------------------------------------------------------------

def discord_ali(x: XState) -> float:
    """Quantum discord of an X state from the two-branch candidate minimum.

    One branch is the equatorial measurement (entropy of a conditional Bloch
    vector built from s_z^A and the combined coherence |rho14| + |rho23|), the
    other is the z measurement (diagonal entropy minus the marginal entropy);
    the smaller wins.
    """
    s_b = binary_entropy(min(max(x.rho11 + x.rho33, 0.0), 1.0))
    s_rho = von_neumann_entropy(eigenvalues_x(x))
    sz_a = x.rho11 + x.rho22 - x.rho33 - x.rho44
    eta = abs(x.rho14) + abs(x.rho23)
    root = math.sqrt(sz_a * sz_a + 4.0 * eta * eta)
    k_equatorial = binary_entropy(min(0.5 * (1.0 + root), 1.0))
    pops = (x.rho11, x.rho22, x.rho33, x.rho44)
    k_z = von_neumann_entropy(pops) - s_b
    return _clamp_unit(s_b - s_rho + min(k_equatorial, k_z), "discord")


def _entropy_vec(x: np.ndarray) -> np.ndarray:
    """Vectorized binary entropy, tolerant of clamped endpoints."""
    x = np.clip(x, 0.0, 1.0)
    return -(xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)) / _LN2


def _conditional_entropy(nhat, s_a, s_b, corr):
    """Mean post-measurement entropy of A for measurement directions nhat on B.

    nhat is (m, 3); returns (m,).  Outcomes with vanishing probability
    contribute nothing.
    """
    proj = nhat @ s_b
    t_n = nhat @ corr.T
    total = np.zeros(nhat.shape[0])
    for sign in (1.0, -1.0):
        prob = 0.5 * (1.0 + sign * proj)
        w = s_a[np.newaxis, :] + sign * t_n
        norm_w = np.sqrt((w * w).sum(axis=1))
        safe = prob > 1e-15
        r = np.zeros_like(prob)
        r[safe] = np.minimum(norm_w[safe] / (2.0 * prob[safe]), 1.0)
        total += prob * _entropy_vec(0.5 * (1.0 + r))
    return total


def _golden_min(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section minimizer; returns the midpoint of the final bracket."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def discord_bruteforce(
    rho: np.ndarray,
    coarse_grid: tuple[int, int] = DEFAULT_COARSE_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
    side: str = "B",
) -> tuple[float, MeasurementDirection]:
    """Quantum discord by explicit minimization over projective measurements.

    A dense (theta, phi) grid locates the basin (first minimum in row-major
    order wins ties, so the result is deterministic), then golden-section
    coordinate descent refines each angle to refine_tol.  Returns the discord
    and the optimal measurement direction.
    """
    rho = np.asarray(rho, dtype=complex)
    if side == "A":
        rho = swap_subsystems(rho)
    elif side != "B":
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    bloch = bloch_decomposition(rho)
    s_rho = von_neumann_entropy(np.linalg.eigvalsh(rho))
    s_marginal = von_neumann_entropy(np.linalg.eigvalsh(partial_trace(rho, "B")))

    n_theta, n_phi = coarse_grid
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    st = np.sin(tt).ravel()
    nhat = np.column_stack((st * np.cos(pp).ravel(), st * np.sin(pp).ravel(),
                            np.cos(tt).ravel()))
    grid_values = _conditional_entropy(nhat, bloch.sA, bloch.sB, bloch.T)
    best = int(np.argmin(grid_values))
    theta, phi = float(tt.ravel()[best]), float(pp.ravel()[best])

    def point(th: float, ph: float) -> float:
        direction = np.array([[math.sin(th) * math.cos(ph),
                               math.sin(th) * math.sin(ph),
                               math.cos(th)]])
        return float(_conditional_entropy(direction, bloch.sA, bloch.sB, bloch.T)[0])

    d_theta = thetas[1] - thetas[0]
    d_phi = phis[1] - phis[0]
    value = grid_values[best]
    for _ in range(25):
        theta = _golden_min(lambda th: point(th, phi),
                            max(0.0, theta - d_theta),
                            min(math.pi, theta + d_theta), refine_tol)
        phi = _golden_min(lambda ph: point(theta, ph),
                          phi - d_phi, phi + d_phi, refine_tol)
        new_value = point(theta, phi)
        if value - new_value < 1e-13:
            value = min(value, new_value)
            break
        value = new_value
    phi %= 2.0 * math.pi

    discord = _clamp_unit(s_marginal - s_rho + value, "discord")
    return discord, MeasurementDirection(theta=theta, phi=phi)


# ---------------------------------------------------------------------------
# Geometric discord and its observable lower bound
# ---------------------------------------------------------------------------

def _correlation_k(rho: np.ndarray) -> np.ndarray:
    """Symmetric 3x3 matrix K = sB sB^t + T^t T (measured side B)."""
    bloch = bloch_decomposition(rho)
    return np.outer(bloch.sB, bloch.sB) + bloch.T.T @ bloch.T


def geometric_discord(rho: np.ndarray, side: str = "B") -> float:
    """Normalized squared distance to the nearest zero-discord state:
    (Tr K - k_max)/2 with K from the Bloch decomposition."""
    rho = np.asarray(rho, dtype=complex)
    if side == "A":
        rho = swap_subsystems(rho)
    elif side != "B":
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    k = _correlation_k(rho)
    k_max = np.linalg.eigvalsh(k)[-1]
    return _clamp_unit(0.5 * (np.trace(k) - k_max), "geometric discord")


def geometric_discord_x(x: XState) -> float:
    """Geometric discord of an X state: the smaller of the two K-eigenvalue
    branches (coherence branch vs z branch), in closed form."""
    r = abs(x.rho14)
    c = abs(x.rho23)
    sz_b = x.rho11 - x.rho22 + x.rho33 - x.rho44
    t_zz = x.rho11 - x.rho22 - x.rho33 + x.rho44
    branch_coh = 4.0 * (r * r + c * c)
    branch_z = 2.0 * (r - c) ** 2 + 0.5 * (sz_b * sz_b + t_zz * t_zz)
    return _clamp_unit(min(branch_coh, branch_z), "geometric discord")


def _k_spectrum_x(x: XState) -> tuple[float, float, float]:
    """Eigenvalues of K for an X state: 4(r+c)^2, 4(r-c)^2, (s_z^B)^2+T_zz^2."""
    r = abs(x.rho14)
    c = abs(x.rho23)
    sz_b = x.rho11 - x.rho22 + x.rho33 - x.rho44
    t_zz = x.rho11 - x.rho22 - x.rho33 + x.rho44
    return (4.0 * (r + c) ** 2, 4.0 * (r - c) ** 2, sz_b * sz_b + t_zz * t_zz)


def _bound_from_moments(tr_k: float, tr_k2: float) -> float:
    radicand = 6.0 * tr_k2 - 2.0 * tr_k * tr_k
    if radicand < -RADICAND_TOL:
        raise ArithmeticError(
            f"negative radicand {radicand:g} in observable bound; "
            "K moments are inconsistent"
        )
    return (2.0 * tr_k - math.sqrt(max(radicand, 0.0))) / 6.0


def observable_bound(rho: np.ndarray, side: str = "B") -> float:
    """Lower bound on geometric discord from the first two moments of K."""
    rho = np.asarray(rho, dtype=complex)
    if side == "A":
        rho = swap_subsystems(rho)
    elif side != "B":
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    k = _correlation_k(rho)
    return _clamp_unit(_bound_from_moments(float(np.trace(k)), float((k * k).sum())),
                       "observable bound")


# ---------------------------------------------------------------------------
# Bundles
# ---------------------------------------------------------------------------

def measure_all_x(x: XState) -> MeasureSet:
    """All four measures of an X state via the closed-form paths."""
    k_eigs = _k_spectrum_x(x)
    bound = _clamp_unit(_bound_from_moments(sum(k_eigs), sum(e * e for e in k_eigs)),
                        "observable bound")
    result = MeasureSet(
        concurrence=concurrence_x(x),
        discord=discord_ali(x),
        geometric_discord=geometric_discord_x(x),
        observable_bound=bound,
    )
    if result.observable_bound > result.geometric_discord + MEASURE_CLAMP_TOL:
        raise ArithmeticError(
            "observable bound exceeds geometric discord beyond tolerance"
        )
    return result


def measure_all(rho: np.ndarray, side: str = "B", x_tol: float = X_STRUCTURE_TOL) -> MeasureSet:
    """All four measures of an arbitrary state.

    Dispatches to the closed-form X paths when the matrix is X-structured
    within x_tol; otherwise uses the general constructions (brute-force
    minimization for the discord).
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density_matrix(rho)
    if side == "A":
        rho = swap_subsystems(rho)
    elif side != "B":
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if is_x_state(rho, x_tol):
        return measure_all_x(XState.from_matrix(rho, x_tol))
    result = MeasureSet(
        concurrence=concurrence_general(rho),
        discord=discord_bruteforce(rho)[0],
        geometric_discord=geometric_discord(rho),
        observable_bound=observable_bound(rho),
    )
    if result.observable_bound > result.geometric_discord + MEASURE_CLAMP_TOL:
        raise ArithmeticError(
            "observable bound exceeds geometric discord beyond tolerance"
        )
    return result


def oracle_deviations(rho: np.ndarray, x_tol: float = X_STRUCTURE_TOL) -> dict[str, float]:
    """Absolute gap between the fast paths and their oracles for one state.

    Only X states have distinct dual routes; for general states the primary
    path already is the oracle, so the deviations are zero by definition.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density_matrix(rho)
    if not is_x_state(rho, x_tol):
        return {"concurrence": 0.0, "discord": 0.0, "geometric_discord": 0.0}
    x = XState.from_matrix(rho, x_tol)
    return {
        "concurrence": abs(concurrence_x(x) - concurrence_general(rho)),
        "discord": abs(discord_ali(x) - discord_bruteforce(rho)[0]),
        "geometric_discord": abs(geometric_discord_x(x) - geometric_discord(rho)),
    }

"""Collective decay rates, analytic X-state propagation, and a master-equation
integrator used as an independent oracle.

Time is dimensionless (gamma * t with gamma = 1 by default).  The analytic
path works on CollectiveState elements where the equations of motion decouple;
the integrator works on full 4x4 matrices through a 16x16 Liouvillian and
knows nothing about the X structure.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import CollectiveState, XState, collective_to_product, product_to_collective

RATE_SERIES_CUTOFF = 1e-4
NEAR_FIELD_CUTOFF = 0.05
DEGENERACY_TOL = 1e-6
MAX_RK4_STEP = 1e-3


class NearFieldWarning(UserWarning):
    """Separation small enough that the dipole-dipole shift dwarfs the decay rate."""


class CollectiveRates(NamedTuple):
    gamma12: float
    omega12: float


def collective_rates(kr: float) -> CollectiveRates:
    """Cross-damping and dipole-dipole shift for separation kr = 2*pi*r/lambda.

    Both values are in units of the single-atom rate gamma.  gamma12 -> 1 as
    kr -> 0 (atoms become indistinguishable to the field) and omega12 diverges
    as (kr)^-3, which is physical near-field behavior, not an error.
    """
    if kr <= 0.0:
        raise ValueError(f"kr must be positive, got {kr}")
    if kr < NEAR_FIELD_CUTOFF:
        warnings.warn(
            f"kr = {kr:g} is deep in the near field; omega12 ~ 3/(4 kr^3) "
            "dominates all other rates",
            NearFieldWarning,
            stacklevel=2,
        )
    if kr < RATE_SERIES_CUTOFF:
        # Direct evaluation loses ~eps/kr^3 to cancellation between the three
        # terms, so use the Taylor series; the quadratic coefficient is -1/5.
        gamma12 = 1.0 - kr * kr / 5.0 + 3.0 * kr**4 / 280.0
    else:
        gamma12 = 1.5 * (
            math.sin(kr) / kr + math.cos(kr) / kr**2 - math.sin(kr) / kr**3
        )
    omega12 = 0.75 * (
        -math.cos(kr) / kr + math.sin(kr) / kr**2 + math.cos(kr) / kr**3
    )
    return CollectiveRates(gamma12=gamma12, omega12=omega12)


@dataclass(frozen=True)
class CollectiveParams:
    """Rate inputs of the two-atom dissipative model.

    gamma12 and omega12 are absolute rates (same units as gamma), not ratios.
    kr is optional bookkeeping recording the separation the rates came from.
    """

    gamma12: float
    omega12: float
    gamma: float = 1.0
    omega0: float = 0.0
    kr: float | None = None

    def __post_init__(self) -> None:
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if abs(self.gamma12) > self.gamma * (1.0 + 1e-12):
            raise ValueError(
                f"|gamma12| = {abs(self.gamma12):g} exceeds gamma = {self.gamma:g}"
            )

    @classmethod
    def from_distance(
        cls, kr: float, gamma: float = 1.0, omega0: float = 0.0
    ) -> "CollectiveParams":
        rates = collective_rates(kr)
        return cls(
            gamma12=rates.gamma12 * gamma,
            omega12=rates.omega12 * gamma,
            gamma=gamma,
            omega0=omega0,
            kr=kr,
        )

    @property
    def gamma_plus(self) -> float:
        """Superradiant decay rate of the symmetric state."""
        return self.gamma + self.gamma12

    @property
    def gamma_minus(self) -> float:
        """Subradiant decay rate of the antisymmetric state."""
        return self.gamma - self.gamma12


def propagate_collective(c0: CollectiveState, params: CollectiveParams, t: float) -> CollectiveState:
    """Closed-form evolution of the collective-basis elements to time t.

    ee decays at 2*gamma and feeds both single-excitation states; ss and aa
    decay at gamma_plus and gamma_minus.  The feeding terms are evaluated via
    expm1 so that nearly degenerate rates (gamma12 -> +/-gamma) do not suffer
    catastrophic cancellation, with an exact first-order limit below
    DEGENERACY_TOL * gamma.
    """
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    g = params.gamma
    gp = params.gamma_plus
    gm = params.gamma_minus
    e2 = math.exp(-2.0 * g * t)
    ep = math.exp(-gp * t)
    em = math.exp(-gm * t)

    ee = c0.ee * e2
    # exp(-gp*t) - exp(-2g*t) = e2 * expm1(gm*t), and symmetrically for aa.
    if abs(gm) < DEGENERACY_TOL * g:
        feed_ss = c0.ee * gp * t * e2
    else:
        feed_ss = c0.ee * (gp / gm) * e2 * math.expm1(gm * t)
    if abs(gp) < DEGENERACY_TOL * g:
        feed_aa = c0.ee * gm * t * e2
    else:
        feed_aa = c0.ee * (gm / gp) * e2 * math.expm1(gp * t)
    ss = c0.ss * ep + feed_ss
    aa = c0.aa * em + feed_aa

    # The symmetric state sits omega12 above the antisymmetric one, so
    # <a|rho|s> rotates at +2*omega12 while damping at gamma; the sign is
    # pinned by equivalence with the integrator.
    coh_as = c0.coh_as * cmath.exp((-g + 2j * params.omega12) * t)
    coh_eg = c0.coh_eg * cmath.exp((-g - 2j * params.omega0) * t)

    return CollectiveState(
        ee=ee,
        ss=ss,
        aa=aa,
        gg=1.0 - ee - ss - aa,
        coh_as=coh_as,
        coh_eg=coh_eg,
    )


def analytic_propagate(x0: XState, params: CollectiveParams, t: float) -> XState:
    """Closed-form evolution of a product-basis X state to time t."""
    return collective_to_product(propagate_collective(product_to_collective(x0), params, t))


def time_grid(tmax: float, steps: int) -> np.ndarray:
    """Uniform grid of `steps` times from 0 to tmax inclusive."""
    if tmax <= 0.0:
        raise ValueError(f"tmax must be positive, got {tmax}")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    return np.linspace(0.0, tmax, steps)


def validate_grid(grid: np.ndarray) -> None:
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a nonempty 1-D array")
    if grid[0] < 0.0:
        raise ValueError(f"time grid must start at t >= 0, got {grid[0]}")
    if grid.size > 1 and np.any(np.diff(grid) <= 0.0):
        raise ValueError("time grid must be strictly increasing")


# ---------------------------------------------------------------------------
# Master-equation integrator (independent of the collective-basis solution)
# ---------------------------------------------------------------------------

_I2 = np.eye(2, dtype=complex)
_I4 = np.eye(4, dtype=complex)
_SP = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|, basis order (e, g)
_SM = _SP.conj().T
_SZ = np.diag([0.5, -0.5]).astype(complex)
_S_PLUS = (np.kron(_SP, _I2), np.kron(_I2, _SP))
_S_MINUS = (np.kron(_SM, _I2), np.kron(_I2, _SM))
_SZ_TOTAL = np.kron(_SZ, _I2) + np.kron(_I2, _SZ)


def build_liouvillian(params: CollectiveParams) -> np.ndarray:
    """16x16 generator L with d vec(rho)/dt = L vec(rho) (row-major vec).

    Assembled directly from the Hamiltonian commutator (atomic frequency and
    dipole-dipole terms) and the damping matrix [[gamma, gamma12], [gamma12,
    gamma]]; trace preservation holds by construction.
    """
    ham = params.omega0 * _SZ_TOTAL + params.omega12 * (
        _S_PLUS[0] @ _S_MINUS[1] + _S_PLUS[1] @ _S_MINUS[0]
    )
    damping = ((params.gamma, params.gamma12), (params.gamma12, params.gamma))
    liou = -1j * (np.kron(ham, _I4) - np.kron(_I4, ham.T))
    for i in range(2):
        for j in range(2):
            jump = np.kron(_S_MINUS[j], _S_PLUS[i].T)
            anti = _S_PLUS[i] @ _S_MINUS[j]
            liou += damping[i][j] * (
                jump - 0.5 * (np.kron(anti, _I4) + np.kron(_I4, anti.T))
            )
    return liou


def _rk4_step(liou: np.ndarray, y: np.ndarray, h: float) -> np.ndarray:
    k1 = liou @ y
    k2 = liou @ (y + 0.5 * h * k1)
    k3 = liou @ (y + 0.5 * h * k2)
    k4 = liou @ (y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def integrate_batch(
    rho0s: np.ndarray, params: CollectiveParams, grid: np.ndarray, dt: float = 1e-4
) -> np.ndarray:
    """Fixed-step 4th-order integration of a stack of initial states.

    Parameters
    ----------
    rho0s : (n, 4, 4) complex array of initial density matrices.
    grid : ascending sample times starting at t >= 0.
    dt : step size, at most MAX_RK4_STEP; the last step of each span is
        shortened to land exactly on the grid point.

    Returns
    -------
    (len(grid), n, 4, 4) array of states at the grid times.
    """
    grid = np.asarray(grid, dtype=float)
    validate_grid(grid)
    if not 0.0 < dt <= MAX_RK4_STEP:
        raise ValueError(f"dt must lie in (0, {MAX_RK4_STEP:g}], got {dt}")
    rho0s = np.asarray(rho0s, dtype=complex)
    if rho0s.ndim != 3 or rho0s.shape[1:] != (4, 4):
        raise ValueError(f"expected shape (n, 4, 4), got {rho0s.shape}")

    liou = build_liouvillian(params)
    n = rho0s.shape[0]
    y = rho0s.reshape(n, 16).T.copy()  # (16, n): one matmul advances all states
    out = np.empty((grid.size, n, 4, 4), dtype=complex)
    t = 0.0
    for k, tk in enumerate(grid):
        span = tk - t
        n_full = int(math.floor(span / dt + 1e-9))
        for _ in range(n_full):
            y = _rk4_step(liou, y, dt)
        rem = span - n_full * dt
        if rem > 1e-12:
            y = _rk4_step(liou, y, rem)
        t = tk
        out[k] = y.T.reshape(n, 4, 4)
    return out


def integrate_master_equation(
    rho0: np.ndarray, params: CollectiveParams, grid: np.ndarray, dt: float = 1e-4
) -> list[np.ndarray]:
    """Integrate a single initial state; returns one 4x4 matrix per grid time."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho0.shape}")
    stacked = integrate_batch(rho0[np.newaxis], params, np.asarray(grid, float), dt)
    return [stacked[k, 0] for k in range(stacked.shape[0])]

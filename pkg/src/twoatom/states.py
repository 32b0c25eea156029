"""Two-qubit state representations and basic linear-algebra helpers.

Product basis ordering throughout: |1> = |e_A e_B>, |2> = |e_A g_B>,
|3> = |g_A e_B>, |4> = |g_A g_B>.  The collective basis keeps |e>, |g>
and replaces the single-excitation pair by the symmetric and antisymmetric
combinations |s>, |a> = (|e_A g_B> +/- |g_A e_B>)/sqrt(2).

States are plain 4x4 complex ndarrays; the X-structured subsets get small
frozen dataclasses so the closed-form paths can avoid touching full matrices.
All entropies are in bits (log base 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
X_STRUCTURE_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_I2 = np.eye(2, dtype=complex)

# Precomputed two-qubit Pauli operators so bloch_decomposition is three einsums.
_PAULI_A = np.stack([np.kron(s, _I2) for s in PAULI])
_PAULI_B = np.stack([np.kron(_I2, s) for s in PAULI])
_PAULI_AB = np.stack([np.kron(si, sj) for si in PAULI for sj in PAULI])


def make_bell_like(p: float) -> np.ndarray:
    """Pure state sqrt(p)|e_A e_B> + sqrt(1-p)|g_A g_B> as a 4-vector.

    p is the initial population of the doubly excited state; p=1/2 gives a
    maximally entangled Bell state, p in {0, 1} gives product states.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    psi = np.zeros(4, dtype=complex)
    psi[0] = math.sqrt(p)
    psi[3] = math.sqrt(1.0 - p)
    return psi


def to_density(psi: np.ndarray) -> np.ndarray:
    """Outer product |psi><psi| of a normalized pure state."""
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"pure state must be normalized, got ||psi|| = {norm}")
    return np.outer(psi, psi.conj())


def validate_density_matrix(rho: np.ndarray) -> None:
    """Check Hermiticity, unit trace and positivity; raise ValueError if violated."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian: max |rho - rho^dag| = {herm:g}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"matrix trace is {tr!r}, expected 1")
    lam_min = np.linalg.eigvalsh(rho)[0]
    if lam_min < -POSITIVITY_TOL:
        raise ValueError(f"matrix has negative eigenvalue {lam_min:g}")


def is_x_state(rho: np.ndarray, tol: float = X_STRUCTURE_TOL) -> bool:
    """True if every element off the diagonal and anti-diagonal is below tol."""
    rho = np.asarray(rho)
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[np.arange(4), 3 - np.arange(4)] = True
    return bool(np.abs(rho[~mask]).max() <= tol)


@dataclass(frozen=True)
class XState:
    """X-structured density matrix in the product basis.

    Only the diagonal and the two independent anti-diagonal coherences are
    stored; rho41 and rho32 are the conjugates of rho14 and rho23.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex = 0.0
    rho23: complex = 0.0

    def validate(self, tol: float = 1e-12) -> None:
        pops = (self.rho11, self.rho22, self.rho33, self.rho44)
        if min(pops) < -tol:
            raise ValueError(f"negative population {min(pops):g}")
        if abs(sum(pops) - 1.0) > tol:
            raise ValueError(f"populations sum to {sum(pops)!r}, expected 1")
        if abs(self.rho14) ** 2 > self.rho11 * self.rho44 + tol:
            raise ValueError("outer block violates positivity: |rho14|^2 > rho11*rho44")
        if abs(self.rho23) ** 2 > self.rho22 * self.rho33 + tol:
            raise ValueError("inner block violates positivity: |rho23|^2 > rho22*rho33")

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.rho11
        rho[1, 1] = self.rho22
        rho[2, 2] = self.rho33
        rho[3, 3] = self.rho44
        rho[0, 3] = self.rho14
        rho[3, 0] = np.conj(self.rho14)
        rho[1, 2] = self.rho23
        rho[2, 1] = np.conj(self.rho23)
        return rho

    @classmethod
    def from_matrix(cls, rho: np.ndarray, tol: float = X_STRUCTURE_TOL) -> "XState":
        rho = np.asarray(rho, dtype=complex)
        if not is_x_state(rho, tol):
            raise ValueError("matrix is not X-structured within tolerance")
        if np.abs(np.diag(rho).imag).max() > tol:
            raise ValueError("diagonal has imaginary parts beyond tolerance")
        return cls(
            rho11=rho[0, 0].real,
            rho22=rho[1, 1].real,
            rho33=rho[2, 2].real,
            rho44=rho[3, 3].real,
            rho14=complex(rho[0, 3]),
            rho23=complex(rho[1, 2]),
        )


@dataclass(frozen=True)
class CollectiveState:
    """X-structured state in the collective basis |e>, |s>, |a>, |g>.

    coh_as = <a|rho|s> couples the symmetric and antisymmetric states;
    coh_eg = <e|rho|g> is the two-photon coherence.
    """

    ee: float
    ss: float
    aa: float
    gg: float
    coh_as: complex = 0.0
    coh_eg: complex = 0.0

    def validate(self, tol: float = 1e-12) -> None:
        pops = (self.ee, self.ss, self.aa, self.gg)
        if min(pops) < -tol:
            raise ValueError(f"negative population {min(pops):g}")
        if abs(sum(pops) - 1.0) > tol:
            raise ValueError(f"populations sum to {sum(pops)!r}, expected 1")
        if abs(self.coh_as) ** 2 > self.ss * self.aa + tol:
            raise ValueError("s/a block violates positivity")
        if abs(self.coh_eg) ** 2 > self.ee * self.gg + tol:
            raise ValueError("e/g block violates positivity")


def collective_to_product(c: CollectiveState) -> XState:
    """Basis change from |e>,|s>,|a>,|g> elements to product-basis elements.

    Uses |2> = (|s>+|a>)/sqrt(2), |3> = (|s>-|a>)/sqrt(2).  rho44 comes from
    the trace condition.
    """
    trace = c.ee + c.ss + c.aa + c.gg
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"collective populations sum to {trace!r}, expected 1")
    re_as = c.coh_as.real
    rho22 = 0.5 * (c.ss + c.aa) + re_as
    rho33 = 0.5 * (c.ss + c.aa) - re_as
    rho23 = 0.5 * (c.ss - c.aa) + 1j * c.coh_as.imag
    return XState(
        rho11=c.ee,
        rho22=rho22,
        rho33=rho33,
        rho44=1.0 - c.ee - rho22 - rho33,
        rho14=c.coh_eg,
        rho23=rho23,
    )


def product_to_collective(x: XState) -> CollectiveState:
    """Exact inverse of collective_to_product."""
    trace = x.rho11 + x.rho22 + x.rho33 + x.rho44
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"populations sum to {trace!r}, expected 1")
    half = 0.5 * (x.rho22 + x.rho33)
    re23 = x.rho23.real
    return CollectiveState(
        ee=x.rho11,
        ss=half + re23,
        aa=half - re23,
        gg=x.rho44,
        coh_as=0.5 * (x.rho22 - x.rho33) + 1j * x.rho23.imag,
        coh_eg=complex(x.rho14),
    )


def partial_trace(rho: np.ndarray, subsystem: str) -> np.ndarray:
    """Reduced 2x2 density matrix of subsystem 'A' or 'B'."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if subsystem == "A":
        return np.einsum("ibjb->ij", r)
    if subsystem == "B":
        return np.einsum("aiaj->ij", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def swap_subsystems(rho: np.ndarray) -> np.ndarray:
    """Exchange the roles of atoms A and B (basis permutation |2> <-> |3>)."""
    perm = [0, 2, 1, 3]
    rho = np.asarray(rho, dtype=complex)
    return rho[np.ix_(perm, perm)]


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors and correlation matrix of a two-qubit state.

    sA[i] = Tr[rho (sigma_i x I)], sB[j] = Tr[rho (I x sigma_j)],
    T[i, j] = Tr[rho (sigma_i x sigma_j)].
    """

    sA: np.ndarray
    sB: np.ndarray
    T: np.ndarray


def bloch_decomposition(rho: np.ndarray) -> BlochForm:
    """All 15 Pauli expectation values of a 4x4 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    sA = np.einsum("kab,ba->k", _PAULI_A, rho).real
    sB = np.einsum("kab,ba->k", _PAULI_B, rho).real
    T = np.einsum("kab,ba->k", _PAULI_AB, rho).real.reshape(3, 3)
    return BlochForm(sA=sA, sB=sB, T=T)


def bloch_reconstruct(b: BlochForm) -> np.ndarray:
    """Rebuild rho = (1/4)[I + sA.sigma x I + I x sB.sigma + sum T_ij sigma_i x sigma_j]."""
    rho = np.eye(4, dtype=complex)
    rho += np.einsum("k,kab->ab", b.sA, _PAULI_A)
    rho += np.einsum("k,kab->ab", b.sB, _PAULI_B)
    rho += np.einsum("k,kab->ab", np.asarray(b.T).reshape(9), _PAULI_AB)
    return 0.25 * rho


def eigenvalues_x(x: XState) -> np.ndarray:
    """Eigenvalues of an X state in descending order (closed per-block form).

    Each 2x2 block {rho11, rho44, rho14} and {rho22, rho33, rho23} contributes
    a pair mean +/- sqrt(half_gap^2 + |coherence|^2).
    """
    mean_out = 0.5 * (x.rho11 + x.rho44)
    rad_out = math.hypot(0.5 * (x.rho11 - x.rho44), abs(x.rho14))
    mean_in = 0.5 * (x.rho22 + x.rho33)
    rad_in = math.hypot(0.5 * (x.rho22 - x.rho33), abs(x.rho23))
    lam = np.array([mean_out + rad_out, mean_out - rad_out,
                    mean_in + rad_in, mean_in - rad_in])
    return np.sort(lam)[::-1]


def von_neumann_entropy(spectrum) -> float:
    """Entropy -sum(lam * log2 lam) in bits, with 0*log0 = 0.

    Eigenvalues in [-1e-10, 0) are treated as roundoff and clamped to zero;
    anything more negative raises, because that signals a broken state rather
    than floating-point noise.
    """
    lam = np.asarray(spectrum, dtype=float)
    if lam.size and lam.min() < -POSITIVITY_TOL:
        raise ValueError(f"eigenvalue {lam.min():g} below -{POSITIVITY_TOL:g}")
    lam = np.clip(lam, 0.0, None)
    nz = lam[lam > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(x: float) -> float:
    """Shannon entropy H(x) = -x log2 x - (1-x) log2(1-x) in bits."""
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)

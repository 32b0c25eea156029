"""Built-in equivalence suites behind the `check` command.

Every closed-form path in the package has an independent counterpart: the
collective-basis propagator vs the brute-force integrator, the X-state
measure formulas vs their general constructions, the two-branch discord vs
explicit measurement minimization, and the moment bound vs the eigenvalue
formula it bounds.  Each suite drives both routes over shared inputs and
reports the worst deviation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import measures, states
from .dynamics import CollectiveParams, integrate_batch, propagate_collective
from .sweep import initial_state

DEFAULT_SEED = 20240811


def random_x_state(rng: np.random.Generator) -> states.XState:
    """Random valid X state: Dirichlet populations, coherences drawn inside
    the positivity disks with uniform relative magnitude and phase."""
    pops = rng.dirichlet(np.ones(4))
    mag14, mag23 = rng.uniform(0.0, 1.0, 2)
    ph14, ph23 = rng.uniform(0.0, 2.0 * math.pi, 2)
    return states.XState(
        rho11=pops[0],
        rho22=pops[1],
        rho33=pops[2],
        rho44=pops[3],
        rho14=mag14 * math.sqrt(pops[0] * pops[3]) * complex(math.cos(ph14), math.sin(ph14)),
        rho23=mag23 * math.sqrt(pops[1] * pops[2]) * complex(math.cos(ph23), math.sin(ph23)),
    )


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """Random full-rank two-qubit density matrix (normalized Wishart sample)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def check_basis_change(transform=states.collective_to_product, seed: int = DEFAULT_SEED) -> SuiteResult:
    """Closed-form propagation + collective->product map vs direct integration.

    The transform is injectable so a deliberately wrong basis change can be
    shown to trip this suite.
    """
    rng = np.random.default_rng(seed)
    grid = np.linspace(0.0, 5.0, 11)
    worst = 0.0
    for kr in (math.pi / 4, math.pi):
        params = CollectiveParams.from_distance(kr)
        xs = [random_x_state(rng) for _ in range(20)]
        numeric = integrate_batch(
            np.stack([x.to_matrix() for x in xs]), params, grid, dt=1e-3
        )
        for j, x in enumerate(xs):
            c0 = states.product_to_collective(x)
            for k, tk in enumerate(grid):
                closed = transform(propagate_collective(c0, params, float(tk)))
                worst = max(worst, float(np.abs(closed.to_matrix() - numeric[k, j]).max()))
    return SuiteResult(
        name="basis_change",
        passed=worst < 1e-8,
        detail=f"max |closed form - integrated| = {worst:.3e} (tol 1e-08)",
    )


def check_x_fast_paths(seed: int = DEFAULT_SEED, n: int = 300) -> SuiteResult:
    """X-state formulas vs the general constructions on random X states."""
    rng = np.random.default_rng(seed)
    worst_c = worst_g = worst_b = 0.0
    for _ in range(n):
        x = random_x_state(rng)
        rho = x.to_matrix()
        worst_c = max(worst_c, abs(measures.concurrence_x(x) - measures.concurrence_general(rho)))
        worst_g = max(worst_g, abs(measures.geometric_discord_x(x) - measures.geometric_discord(rho)))
        worst_b = max(worst_b, abs(measures.measure_all_x(x).observable_bound
                                   - measures.observable_bound(rho)))
    passed = worst_c < 1e-10 and worst_g < 1e-12 and worst_b < 1e-12
    return SuiteResult(
        name="x_fast_paths",
        passed=passed,
        detail=(f"concurrence {worst_c:.1e} (tol 1e-10), geometric {worst_g:.1e} "
                f"(tol 1e-12), bound {worst_b:.1e} (tol 1e-12)"),
    )


def check_ali_vs_bruteforce() -> SuiteResult:
    """Two-branch discord vs measurement minimization on the evolution family."""
    params = CollectiveParams.from_distance(math.pi / 4)
    worst = 0.0
    for p in (0.3, 2.0 / 3.0, 1.0):
        c0 = states.product_to_collective(initial_state(p))
        for t in np.linspace(0.0, 10.0, 12):
            x = states.collective_to_product(propagate_collective(c0, params, float(t)))
            dev = abs(measures.discord_ali(x) - measures.discord_bruteforce(x.to_matrix())[0])
            worst = max(worst, dev)
    return SuiteResult(
        name="ali_vs_bruteforce",
        passed=worst < 1e-4,
        detail=f"max |two-branch - minimized| = {worst:.3e} on the p-family (tol 1e-04)",
    )


def check_bound_ordering(seed: int = DEFAULT_SEED, n: int = 300) -> SuiteResult:
    """Moment bound never exceeds geometric discord on random states."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(n):
        rho = random_density_matrix(rng)
        worst = max(worst, measures.observable_bound(rho) - measures.geometric_discord(rho))
    return SuiteResult(
        name="bound_ordering",
        passed=worst <= 1e-9,
        detail=f"max (bound - geometric discord) = {worst:.3e} (tol 1e-09)",
    )


def run_checks(transform=states.collective_to_product, stream=None) -> tuple[bool, list[SuiteResult]]:
    """Run all suites, print one line per suite, return (all_passed, results)."""
    if stream is None:
        stream = sys.stdout
    results = [
        check_basis_change(transform=transform),
        check_x_fast_paths(),
        check_ali_vs_bruteforce(),
        check_bound_ordering(),
    ]
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}", file=stream)
    n_ok = sum(r.passed for r in results)
    print(f"{n_ok}/{len(results)} suites passed", file=stream)
    return n_ok == len(results), results

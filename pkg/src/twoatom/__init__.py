"""Two two-level atoms in a common vacuum: dissipative dynamics and
quantum-correlation measures (concurrence, discord, geometric discord,
and the observable lower bound on geometric discord)."""

__version__ = "0.1.0"

from .dynamics import (
    CollectiveParams,
    CollectiveRates,
    NearFieldWarning,
    analytic_propagate,
    build_liouvillian,
    collective_rates,
    integrate_master_equation,
    propagate_collective,
    time_grid,
)
from .measures import (
    MeasureSet,
    concurrence_general,
    concurrence_x,
    discord_ali,
    discord_bruteforce,
    geometric_discord,
    geometric_discord_x,
    measure_all,
    observable_bound,
)
from .states import (
    BlochForm,
    CollectiveState,
    XState,
    bloch_decomposition,
    collective_to_product,
    make_bell_like,
    partial_trace,
    product_to_collective,
    to_density,
)
from .sweep import (
    EventReport,
    Surface,
    Trajectory,
    cusp_ratio,
    detect_events,
    initial_state,
    surface,
    trajectory,
)

__all__ = [
    "__version__",
    "BlochForm",
    "CollectiveParams",
    "CollectiveRates",
    "CollectiveState",
    "EventReport",
    "MeasureSet",
    "NearFieldWarning",
    "Surface",
    "Trajectory",
    "XState",
    "analytic_propagate",
    "bloch_decomposition",
    "build_liouvillian",
    "collective_rates",
    "collective_to_product",
    "concurrence_general",
    "concurrence_x",
    "cusp_ratio",
    "detect_events",
    "discord_ali",
    "discord_bruteforce",
    "geometric_discord",
    "geometric_discord_x",
    "initial_state",
    "integrate_master_equation",
    "make_bell_like",
    "measure_all",
    "observable_bound",
    "partial_trace",
    "product_to_collective",
    "propagate_collective",
    "surface",
    "time_grid",
    "to_density",
    "trajectory",
]

"""Exact equilibrium efficiency and budget-constrained mechanism design for finite games."""

from .game import (
    EquilibriumValue,
    Game,
    PayoffGroup,
    Weights,
    aggregate,
    best_equilibrium_value,
    build_game,
    control_optimum,
    deviation_gaps,
    efficiency,
    epsilon_equilibria,
    from_nested,
    payoff_range,
    worst_equilibrium_value,
)
from .info import (
    BoxScheme,
    box_member,
    implementable,
    info_gap_report,
    punish_budget,
    reward_budget,
    scheme_value,
    theta_box,
    zero_box,
)
from .lp import Constraint, LinearSystem, solve_feasibility
from .mechanism import (
    EfficiencyCurve,
    FullTransfer,
    KappaScheme,
    PartialTransfer,
    ThetaScheme,
    efficiency_curve,
    kappa_threshold,
    perturb_full,
    perturb_partial,
    perturb_tax,
    scheme_member,
    synthesize_witness,
    theta_threshold,
    value_at,
)
from .planner import (
    ProportionalFamily,
    TabulatedFamily,
    optimize_theta,
    planner_curve,
    post_tax_split,
)
from .rationals import NEG_INF

__version__ = "0.1.0"

__all__ = [
    "aggregate",
    "best_equilibrium_value",
    "box_member",
    "BoxScheme",
    "build_game",
    "Constraint",
    "control_optimum",
    "deviation_gaps",
    "efficiency",
    "efficiency_curve",
    "EfficiencyCurve",
    "epsilon_equilibria",
    "EquilibriumValue",
    "from_nested",
    "FullTransfer",
    "Game",
    "implementable",
    "info_gap_report",
    "kappa_threshold",
    "KappaScheme",
    "LinearSystem",
    "NEG_INF",
    "optimize_theta",
    "PartialTransfer",
    "payoff_range",
    "PayoffGroup",
    "perturb_full",
    "perturb_partial",
    "perturb_tax",
    "planner_curve",
    "post_tax_split",
    "ProportionalFamily",
    "punish_budget",
    "reward_budget",
    "scheme_member",
    "scheme_value",
    "solve_feasibility",
    "synthesize_witness",
    "TabulatedFamily",
    "theta_box",
    "theta_threshold",
    "ThetaScheme",
    "value_at",
    "Weights",
    "worst_equilibrium_value",
    "zero_box",
]

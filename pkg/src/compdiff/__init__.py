"""Competitive diffusion games: simulation, equilibrium checks and exact solvers."""

from compdiff.diffusion import (
    NEUTRAL,
    UNDOMINATED,
    Counterexample,
    DiffusionOutcome,
    ProfileError,
    best_response,
    extra_potential,
    is_nash,
    simulate,
    utilities,
    utility_of_deviation,
)
from compdiff.graph import (
    GameInstance,
    GraphValidationError,
    InstanceParseError,
    WeightedGraph,
    load,
    save,
    validate,
)
from compdiff.kernels import BACKEND
from compdiff.search import DEFAULT_BUDGET, BudgetExceeded, SearchReport, brute_force

__all__ = [
    "BACKEND",
    "DEFAULT_BUDGET",
    "NEUTRAL",
    "UNDOMINATED",
    "BudgetExceeded",
    "Counterexample",
    "DiffusionOutcome",
    "GameInstance",
    "GraphValidationError",
    "InstanceParseError",
    "ProfileError",
    "SearchReport",
    "WeightedGraph",
    "best_response",
    "brute_force",
    "extra_potential",
    "is_nash",
    "load",
    "save",
    "simulate",
    "utilities",
    "utility_of_deviation",
    "validate",
]

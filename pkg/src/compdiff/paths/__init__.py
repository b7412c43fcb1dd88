"""Exact equilibrium solvers for forests of paths."""

from compdiff.paths.forest import (
    BoundaryWitness,
    ForestEquilibrium,
    NotAPathForest,
    PathForest,
    solve_forest_unweighted,
    solve_forest_weighted,
)
from compdiff.paths.knapsack import combine_counts
from compdiff.paths.unweighted import admissible_range_unweighted, admits, count_bounds, equilibrium_profile
from compdiff.paths.weighted import (
    SubEquilibriumTable,
    admissible_counts_weighted,
    admissible_profiles,
    build_table,
    nash_frontier,
)

__all__ = [
    "BoundaryWitness",
    "ForestEquilibrium",
    "NotAPathForest",
    "PathForest",
    "SubEquilibriumTable",
    "admissible_counts_weighted",
    "admissible_profiles",
    "admissible_range_unweighted",
    "admits",
    "build_table",
    "combine_counts",
    "count_bounds",
    "equilibrium_profile",
    "nash_frontier",
    "solve_forest_unweighted",
    "solve_forest_weighted",
]

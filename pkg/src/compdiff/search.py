"""Exhaustive pure-Nash search, the reference oracle for every specialized solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Literal

from compdiff import kernels
from compdiff.diffusion import StrategyProfile
from compdiff.graph import GameInstance

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, n: int, k: int, budget: int):
        super().__init__(f"brute force over n^k = {n}^{k} profiles exceeds budget {budget}")
        self.n, self.k, self.budget = n, k, budget


@dataclass
class SearchReport:
    found: StrategyProfile | None
    profiles_checked: int
    equilibria: list[StrategyProfile] | None = field(default=None)

    @property
    def exists(self) -> bool:
        return self.found is not None


def iter_profiles(n: int, k: int):
    """Non-decreasing k-tuples over ``range(n)`` in lexicographic order."""
    return combinations_with_replacement(range(n), k)


def brute_force(
    instance: GameInstance,
    mode: Literal["first", "all"] = "first",
    budget: int = DEFAULT_BUDGET,
) -> SearchReport:
    """Check every multiset of seeds; player symmetry makes sorted tuples sufficient.

    With ``mode="all"`` every equilibrium (up to permutation of players) is
    collected; ``found`` is then the lexicographically first one.
    """
    n, k = instance.n, instance.k
    if n**k > budget:
        raise BudgetExceeded(n, k, budget)
    csr = instance.graph.csr
    checked = 0
    found = None
    every: list[StrategyProfile] | None = [] if mode == "all" else None
    for prof in iter_profiles(n, k):
        checked += 1
        if kernels.first_improvement(*csr, prof) is None:
            if found is None:
                found = prof
            if every is None:
                break
            every.append(prof)
    return SearchReport(found=found, profiles_checked=checked, equilibria=every)

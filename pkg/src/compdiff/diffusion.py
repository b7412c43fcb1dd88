"""Diffusion simulation, utilities, deviations and Nash checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from compdiff import kernels
from compdiff.graph import GameInstance

NEUTRAL = kernels.NEUTRAL
UNDOMINATED = kernels.UNDOMINATED

StrategyProfile = tuple[int, ...]


class ProfileError(ValueError):
    """Profile length or vertex ids are invalid for the instance."""


@dataclass(frozen=True)
class DiffusionOutcome:
    """Final state of one run.

    ``owner[v]`` is a player index, :data:`NEUTRAL` or :data:`UNDOMINATED`;
    ``time[v]`` is the 1-based step at which ``v`` was decided, or ``None``.
    """

    owner: tuple[int, ...]
    time: tuple[int | None, ...]
    utilities: tuple[int, ...]

    def dominated_by(self, player: int) -> list[int]:
        return [v for v, p in enumerate(self.owner) if p == player]

    @property
    def neutral(self) -> list[int]:
        return [v for v, p in enumerate(self.owner) if p == NEUTRAL]

    @property
    def undominated(self) -> list[int]:
        return [v for v, p in enumerate(self.owner) if p == UNDOMINATED]

    def to_dict(self) -> dict:
        def label(p: int) -> int | str:
            if p == NEUTRAL:
                return "neutral"
            if p == UNDOMINATED:
                return "undominated"
            return p

        return {
            "owner": [label(p) for p in self.owner],
            "time": list(self.time),
            "utilities": list(self.utilities),
        }


@dataclass(frozen=True)
class Counterexample:
    """Player ``player`` strictly gains ``gain`` by moving to ``vertex``."""

    player: int
    vertex: int
    gain: int


def check_profile(instance: GameInstance, profile: Sequence[int]) -> StrategyProfile:
    prof = tuple(int(v) for v in profile)
    if len(prof) != instance.k:
        raise ProfileError(f"profile has {len(prof)} entries, game has k={instance.k} players")
    for i, v in enumerate(prof):
        if not 0 <= v < instance.n:
            raise ProfileError(f"player {i} chose vertex {v}, outside 0..{instance.n - 1}")
    return prof


def simulate(instance: GameInstance, profile: Sequence[int]) -> DiffusionOutcome:
    prof = check_profile(instance, profile)
    owner, time, util = kernels.simulate(*instance.graph.csr, prof)
    return DiffusionOutcome(
        owner=tuple(int(x) for x in owner),
        time=tuple(int(t) if t > 0 else None for t in time),
        utilities=tuple(int(x) for x in util),
    )


def utilities(instance: GameInstance, profile: Sequence[int]) -> tuple[int, ...]:
    return simulate(instance, profile).utilities


def utility_of_deviation(instance: GameInstance, profile: Sequence[int], i: int, v: int) -> int:
    """``U_i`` after player ``i`` alone switches its seed to ``v``."""
    prof = check_profile(instance, profile)
    if not 0 <= i < instance.k:
        raise ProfileError(f"player index {i} outside 0..{instance.k - 1}")
    if not 0 <= v < instance.n:
        raise ProfileError(f"vertex {v} outside 0..{instance.n - 1}")
    return int(kernels.deviation_utility(*instance.graph.csr, prof, i, v))


def is_nash(instance: GameInstance, profile: Sequence[int]) -> Counterexample | None:
    """Return ``None`` for an equilibrium, else the first improving deviation.

    Players are scanned in index order and target vertices in id order.
    """
    prof = check_profile(instance, profile)
    hit = kernels.first_improvement(*instance.graph.csr, prof)
    if hit is None:
        return None
    return Counterexample(*(int(x) for x in hit))


def best_response(instance: GameInstance, profile: Sequence[int], i: int) -> tuple[int, int]:
    """``(v*, U*)`` maximizing player ``i``'s utility; smallest vertex id on ties."""
    prof = check_profile(instance, profile)
    if not 0 <= i < instance.k:
        raise ProfileError(f"player index {i} outside 0..{instance.k - 1}")
    csr = instance.graph.csr
    best_v, best_u = -1, None
    for v in range(instance.n):
        u = int(kernels.deviation_utility(*csr, prof, i, v))
        if best_u is None or u > best_u:
            best_v, best_u = v, u
    return best_v, best_u


def extra_potential(instance: GameInstance, profile: Sequence[int]) -> int:
    """Largest utility a (k+1)-th player could obtain by joining ``profile``."""
    prof = tuple(int(v) for v in profile)
    return int(kernels.extra_potential(*instance.graph.csr, prof))

"""Equilibrium search on forests whose components are paths.

Players on different paths interact only through deviations: a player moving
to another path earns what an extra player would earn there. A profile is
therefore an equilibrium iff every path carries a path equilibrium and every
player's utility is at least the extra-player potential of every other path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from compdiff.diffusion import StrategyProfile, is_nash
from compdiff.graph import GameInstance, GraphValidationError, WeightedGraph
from compdiff.paths.knapsack import combine_counts
from compdiff.paths.segments import PathModel
from compdiff.paths.unweighted import count_bounds, equilibrium_profile
from compdiff.paths.weighted import admissible_profiles, nash_frontier


class NotAPathForest(GraphValidationError):
    def __init__(self, vertex: int, reason: str):
        super().__init__(f"vertex {vertex}: {reason}")
        self.vertex = vertex


@dataclass(frozen=True)
class PathForest:
    """Disjoint weighted paths.

    ``vertices[j][i]`` is the graph vertex at position ``i`` of path ``j``.
    """

    paths: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(p) == 0 for p in self.paths):
            raise GraphValidationError("every path needs at least one vertex")
        if [len(p) for p in self.paths] != [len(v) for v in self.vertices]:
            raise GraphValidationError("vertex map does not match path lengths")

    @classmethod
    def from_paths(cls, paths: Sequence[Sequence[int]]) -> "PathForest":
        ws, ids, nxt = [], [], 0
        for p in paths:
            ws.append(tuple(int(w) for w in p))
            ids.append(tuple(range(nxt, nxt + len(p))))
            nxt += len(p)
        return cls(paths=tuple(ws), vertices=tuple(ids))

    @classmethod
    def from_graph(cls, graph: WeightedGraph) -> "PathForest":
        """Split ``graph`` into its path components.

        Each path starts at its endpoint with the smaller id; paths are ordered
        by smallest vertex id.

        Raises:
            NotAPathForest: naming a vertex of degree above two or on a cycle.
        """
        for v in range(graph.n):
            if graph.degree(v) > 2:
                raise NotAPathForest(v, f"degree {graph.degree(v)} exceeds 2")
        ws, ids = [], []
        for comp in graph.components():
            edges = sum(graph.degree(v) for v in comp) // 2
            if edges != len(comp) - 1:
                raise NotAPathForest(min(comp), "lies on a cycle")
            start = min(v for v in comp if graph.degree(v) <= 1)
            order, prev, cur = [start], -1, start
            while len(order) < len(comp):
                nxt = next(u for u in graph.neighbors(cur) if u != prev)
                prev, cur = cur, nxt
                order.append(cur)
            ids.append(tuple(order))
            ws.append(tuple(graph.weights[v] for v in order))
        return cls(paths=tuple(ws), vertices=tuple(ids))

    @property
    def m(self) -> int:
        return len(self.paths)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.paths)

    def positive_weight(self, j: int) -> int:
        return sum(w for w in self.paths[j] if w > 0)

    @property
    def W(self) -> int:
        return max((self.positive_weight(j) for j in range(self.m)), default=0)

    @property
    def unit(self) -> bool:
        return all(w == 1 for p in self.paths for w in p)

    @cached_property
    def graph(self) -> WeightedGraph:
        n = self.n
        weights = [0] * n
        edges = []
        for ws, ids in zip(self.paths, self.vertices):
            for w, v in zip(ws, ids):
                weights[v] = w
            edges += list(zip(ids, ids[1:]))
        return WeightedGraph.from_edges(n, edges, weights)

    def instance(self, k: int) -> GameInstance:
        return GameInstance(self.graph, k)

    def assemble(self, local: Sequence[Sequence[int]]) -> StrategyProfile:
        """Concatenate per-path positions into one profile of graph vertices."""
        return tuple(self.vertices[j][p] for j, prof in enumerate(local) for p in prof)


@dataclass(frozen=True)
class BoundaryWitness:
    """Per-path player counts and path equilibria certifying a forest equilibrium.

    With ``upper`` unset every path satisfies ``nu <= t <= mu``. Otherwise path
    ``special`` satisfies ``mu >= t`` and ``nu <= upper`` while every other
    path satisfies ``nu <= t`` and, when occupied, ``mu >= upper``.
    """

    t: int | float | None
    counts: tuple[int, ...]
    profiles: tuple[tuple[int, ...], ...]
    upper: int | float | None = None
    special: int | None = None


@dataclass(frozen=True)
class ForestEquilibrium:
    profile: StrategyProfile
    witness: BoundaryWitness


def _verified(forest: PathForest, k: int, witness: BoundaryWitness) -> ForestEquilibrium:
    profile = forest.assemble(witness.profiles)
    cex = is_nash(forest.instance(k), profile)
    if cex is not None:
        raise AssertionError(f"assembled profile {profile} is not an equilibrium: {cex}")
    return ForestEquilibrium(profile=profile, witness=witness)


def solve_forest_weighted(forest: PathForest, k: int) -> ForestEquilibrium | None:
    """Find an equilibrium on a weighted path forest, or return ``None``.

    First sweeps a common boundary ``t = 0..W``. If no boundary works, searches
    the exact condition in which one path's extra-player potential may exceed
    the others' boundary (possible with nonpositive weights).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    models = [PathModel(p) for p in forest.paths]
    for t in range(forest.W + 1):
        per_path = [admissible_profiles(pm, t, k) for pm in models]
        counts = combine_counts([d.keys() for d in per_path], k)
        if counts is not None:
            profiles = tuple(per_path[j][c] for j, c in enumerate(counts))
            return _verified(forest, k, BoundaryWitness(t=t, counts=counts, profiles=profiles))
    return _exact_split(forest, models, k)


def _pick(front: dict, nu_max: float, mu_min: float) -> dict:
    """One frontier point per player count meeting both thresholds."""
    out = {}
    for c, pts in front.items():
        for p in pts:
            if p.nu <= nu_max and p.mu >= mu_min:
                out[c] = p
                break
    return out


def _exact_split(forest: PathForest, models: list[PathModel], k: int) -> ForestEquilibrium | None:
    fronts = [nash_frontier(pm, k) for pm in models]
    levels = sorted({pt.nu for fr in fronts for pts in fr.values() for pt in pts})
    m = forest.m
    for upper in levels:
        # with a single path nothing bounds the special path from below
        for t in [float("-inf"), *levels]:
            if t > upper:
                break
            regular = [_pick(fr, nu_max=t, mu_min=upper) for fr in fronts]
            special = [_pick(fr, nu_max=upper, mu_min=t) for fr in fronts]
            for jh in range(m):
                sets = [special[j] if j == jh else regular[j] for j in range(m)]
                counts = combine_counts([s.keys() for s in sets], k)
                if counts is None:
                    continue
                profiles = tuple(sets[j][c].profile for j, c in enumerate(counts))
                witness = BoundaryWitness(t=t, counts=counts, profiles=profiles, upper=upper, special=jh)
                return _verified(forest, k, witness)
    return None


def solve_forest_unweighted(forest: PathForest | Sequence[int], k: int) -> ForestEquilibrium | None:
    """Closed-form search on unit-weight paths.

    ``forest`` may also be given as a list of path lengths.

    Raises:
        ValueError: if some vertex weight differs from 1.
    """
    if not isinstance(forest, PathForest):
        forest = PathForest.from_paths([[1] * n for n in forest])
    if not forest.unit:
        raise ValueError("solve_forest_unweighted needs all vertex weights equal to 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    n = forest.n
    lengths = [len(p) for p in forest.paths]
    if k >= n:
        # every vertex seeded; surplus players share the first vertex
        profile = tuple(range(n)) + (0,) * (k - n)
        cex = is_nash(forest.instance(k), profile)
        assert cex is None, cex
        return ForestEquilibrium(profile=profile, witness=BoundaryWitness(t=None, counts=(), profiles=()))
    for t in range(1, max(lengths) + 1):
        bounds = [count_bounds(nj, t) for nj in lengths]
        if any(b is None for b in bounds):
            continue
        lo = sum(b[0] for b in bounds)
        hi = sum(b[1] for b in bounds)
        if not lo <= k <= hi:
            continue
        counts, spare = [], k - lo
        for b_lo, b_hi in bounds:
            step = min(spare, b_hi - b_lo)
            counts.append(b_lo + step)
            spare -= step
        profiles = tuple(equilibrium_profile(nj, c, t) for nj, c in zip(lengths, counts))
        return _verified(forest, k, BoundaryWitness(t=t, counts=tuple(counts), profiles=profiles))
    return None

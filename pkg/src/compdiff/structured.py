"""Equilibrium search on chain, cochain and threshold graphs.

All three classes split into sides ``X`` and ``Y`` whose neighbourhoods are
nested (closed neighbourhoods on a side that is a clique). A seed whose
neighbourhood is contained in another single seed's neighbourhood earns
exactly its own weight, so only the two outermost occupied vertices can
spread; everything else is decided by vertex weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from compdiff.diffusion import StrategyProfile, check_profile, is_nash
from compdiff.graph import GameInstance, GraphValidationError, WeightedGraph

GraphClass = Literal["chain", "cochain", "threshold"]
CLASSES: tuple[GraphClass, ...] = ("chain", "cochain", "threshold")


class NotInClass(GraphValidationError):
    """The graph is not in the declared class; ``witness`` is an offending vertex pair."""

    def __init__(self, cls: str, witness: tuple[int, int], reason: str):
        super().__init__(f"not a {cls} graph: vertices {witness[0]} and {witness[1]} {reason}")
        self.cls = cls
        self.witness = witness


class PreconditionError(ValueError):
    """The seed is not inclusion-dominated by a vertex held by exactly one other player."""


@dataclass(frozen=True)
class InclusionOrderedGraph:
    """A graph with inclusion orderings ``x_1..x_p`` and ``y_1..y_q``.

    Neighbourhoods grow along each ordering; on a side flagged as a clique the
    closed neighbourhood is used.
    """

    base: WeightedGraph
    cls: GraphClass
    X: tuple[int, ...]
    Y: tuple[int, ...]
    clique_x: bool
    clique_y: bool

    @property
    def p(self) -> int:
        return len(self.X)

    @property
    def q(self) -> int:
        return len(self.Y)

    def to_dict(self) -> dict:
        return {"class": self.cls, "X": list(self.X), "Y": list(self.Y)}


def _two_colour(adj: Sequence[set[int]]) -> tuple[list[int], tuple[int, int] | None]:
    """Colour 0/1 by BFS; on failure return an edge joining equal colours."""
    colour = [-1] * len(adj)
    for s in range(len(adj)):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = [s]
        for u in queue:
            for v in sorted(adj[u]):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return colour, (min(u, v), max(u, v))
    return colour, None


def _nested_order(side: Sequence[int], nbhd: dict[int, frozenset[int]], cls: str) -> tuple[int, ...]:
    order = sorted(side, key=lambda v: (len(nbhd[v]), v))
    for u, v in zip(order, order[1:]):
        if not nbhd[u] <= nbhd[v]:
            raise NotInClass(cls, (u, v), "have incomparable neighbourhoods")
    return tuple(order)


def _split_bipartite(adj: Sequence[set[int]], cls: str) -> tuple[list[int], list[int]]:
    colour, bad = _two_colour(adj)
    if bad is not None:
        raise NotInClass(cls, bad, "break the required two-sided structure")
    # isolated vertices go to X; X is the side of the first non-isolated vertex
    ref = next((v for v in range(len(adj)) if adj[v]), None)
    x_colour = colour[ref] if ref is not None else 0
    X = [v for v in range(len(adj)) if not adj[v] or colour[v] == x_colour]
    Y = [v for v in range(len(adj)) if adj[v] and colour[v] != x_colour]
    return X, Y


def _threshold_split(graph: WeightedGraph) -> tuple[list[int], list[int]]:
    """Peel isolated vertices (to ``Y``) and dominating vertices (to ``X``)."""
    alive = set(range(graph.n))
    deg = {v: graph.degree(v) for v in alive}
    X, Y = [], []
    while alive:
        size = len(alive)
        pick = next((v for v in sorted(alive) if deg[v] == 0), None)
        side = Y
        if pick is None:
            pick = next((v for v in sorted(alive) if deg[v] == size - 1), None)
            side = X
        if pick is None:
            nb = {v: set(graph.neighbors(v)) & alive for v in alive}
            for u in sorted(alive):
                for v in sorted(alive):
                    if u < v and (nb[u] - {v}) - nb[v] and (nb[v] - {u}) - nb[u]:
                        raise NotInClass("threshold", (u, v), "have incomparable neighbourhoods")
            raise AssertionError("peeling stalled without a witness")
        side.append(pick)
        alive.remove(pick)
        for u in graph.neighbors(pick):
            if u in alive:
                deg[u] -= 1
    return X, Y


def recognize_and_order(graph: WeightedGraph, cls: GraphClass) -> InclusionOrderedGraph:
    """Find sides and inclusion orderings for a graph of the declared class.

    Raises:
        NotInClass: with a pair of vertices that violates the structure.
        ValueError: for an unknown class name.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown graph class {cls!r}; expected one of {', '.join(CLASSES)}")
    n = graph.n
    adj = [set(graph.neighbors(v)) for v in range(n)]
    if cls == "chain":
        X, Y = _split_bipartite(adj, cls)
        cx = cy = False
    elif cls == "cochain":
        comp = [set(range(n)) - adj[v] - {v} for v in range(n)]
        X, Y = _split_bipartite(comp, cls)
        cx = cy = True
    else:
        X, Y = _threshold_split(graph)
        cx, cy = True, False
    for side, closed in ((X, cx), (Y, cy)):
        for u in side:
            for v in side:
                if u < v and (v in adj[u]) != closed:
                    reason = "are adjacent inside an independent side" if not closed else "are non-adjacent inside a clique side"
                    raise NotInClass(cls, (u, v), reason)
    xs = set(X)
    nbhd = {v: frozenset(adj[v] | ({v} if (cx if v in xs else cy) else set())) for v in range(n)}
    return InclusionOrderedGraph(
        base=graph,
        cls=cls,
        X=_nested_order(X, nbhd, cls),
        Y=_nested_order(Y, nbhd, cls),
        clique_x=cx,
        clique_y=cy,
    )


@dataclass(frozen=True)
class ChainSolution:
    """Equilibrium found for the guess ``(a, b)`` of the outermost occupied indices.

    Indices are 1-based with 0 meaning the side is unoccupied. ``rule`` is
    ``"greedy"`` for the basic candidate and ``"extended"`` when the surplus
    players were stacked on ``stack`` after ``singles`` greedy picks.
    """

    profile: StrategyProfile
    guess: tuple[int, int]
    rule: str = "greedy"
    singles: int | None = None
    stack: int | None = None


def _tops(inst: InclusionOrderedGraph, a: int, b: int) -> list[int]:
    out = []
    if a:
        out.append(inst.X[a - 1])
    if b:
        out.append(inst.Y[b - 1])
    return out


def _pool(inst: InclusionOrderedGraph, a: int, b: int) -> list[int]:
    """Vertices below the guessed tops, heaviest first; X before Y, then lower index."""
    w = inst.base.weights
    pool = [(0, i, v) for i, v in enumerate(inst.X[: max(a - 1, 0)])]
    pool += [(1, i, v) for i, v in enumerate(inst.Y[: max(b - 1, 0)])]
    pool.sort(key=lambda e: (-w[e[2]], e[0], e[1]))
    return [v for _, _, v in pool]


def candidate(inst: InclusionOrderedGraph, k: int, a: int, b: int) -> StrategyProfile | None:
    """The basic profile for guess ``(a, b)``, or ``None`` if the tops need more than ``k`` seats.

    Remaining players take the heaviest vacant nonnegative vertex below the
    tops; once none is left they all stack on the first top.
    """
    fixed = _tops(inst, a, b)
    if not fixed or len(fixed) > k:
        return None
    w = inst.base.weights
    rest = []
    for v in _pool(inst, a, b):
        if len(fixed) + len(rest) == k or w[v] < 0:
            break
        rest.append(v)
    rest += [fixed[0]] * (k - len(fixed) - len(rest))
    return tuple(fixed + rest)


def extended_candidates(inst: InclusionOrderedGraph, k: int, a: int, b: int):
    """Yield ``(singles, stack, profile)``: ``singles`` greedy picks, the rest stacked on ``stack``.

    Stacking on a top makes it neutral, after which the inclusion argument
    behind the basic candidate no longer applies; these variants cover that.
    """
    fixed = _tops(inst, a, b)
    if not fixed or len(fixed) > k:
        return
    w = inst.base.weights
    pool = _pool(inst, a, b)
    nonneg = [v for v in pool if w[v] >= 0]
    free = k - len(fixed)
    targets = sorted(set(fixed) | set(pool))
    for r in range(min(free, len(nonneg)), -1, -1):
        singles = nonneg[:r]
        if r == free:
            yield r, None, tuple(fixed + singles)
            continue
        for z in targets:
            yield r, z, tuple(fixed + singles + [z] * (free - r))


def _guesses(inst: InclusionOrderedGraph) -> list[tuple[int, int]]:
    out = [(a, b) for a in range(1, inst.p + 1) for b in range(inst.q + 1)]
    return out + [(0, b) for b in range(1, inst.q + 1)]


def solve_chain(inst: InclusionOrderedGraph, k: int, extended: bool = True) -> ChainSolution | None:
    """Return the first equilibrium among the generated candidates, or ``None``.

    Guesses are scanned with ``a`` (the ``X`` index) outermost; ``a = 0``
    comes last. The basic candidate of every guess is tried first. With
    ``extended`` the wider family from :func:`extended_candidates` is tried
    afterwards, since the basic family can miss equilibria whose surplus
    players collide away from the first top.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    game = GameInstance(inst.base, k)
    for a, b in _guesses(inst):
        prof = candidate(inst, k, a, b)
        if prof is not None and is_nash(game, prof) is None:
            return ChainSolution(profile=prof, guess=(a, b))
    if not extended:
        return None
    for a, b in _guesses(inst):
        for r, z, prof in extended_candidates(inst, k, a, b):
            if is_nash(game, prof) is None:
                return ChainSolution(profile=prof, guess=(a, b), rule="extended", singles=r, stack=z)
    return None


def _closed(graph: WeightedGraph, v: int) -> frozenset[int]:
    return frozenset(graph.neighbors(v)) | {v}


def dominator(graph: WeightedGraph, profile: Sequence[int], i: int) -> int | None:
    """A vertex held by exactly one other player whose neighbourhood contains that of ``s_i``."""
    u = profile[i]
    counts: dict[int, int] = {}
    for v in profile:
        counts[v] = counts.get(v, 0) + 1
    nu, cu = frozenset(graph.neighbors(u)), _closed(graph, u)
    for v in sorted(counts):
        if v == u or counts[v] != 1:
            continue
        if nu <= frozenset(graph.neighbors(v)) or cu <= _closed(graph, v):
            return v
    return None


def inclusion_utility(inst: InclusionOrderedGraph | WeightedGraph, profile: Sequence[int], i: int) -> int:
    """Utility of player ``i`` without simulating: 0 on a shared seed, else the seed's weight.

    Raises:
        PreconditionError: if no other single seed dominates ``s_i``.
    """
    graph = inst.base if isinstance(inst, InclusionOrderedGraph) else inst
    prof = check_profile(GameInstance(graph, len(profile)), profile)
    if dominator(graph, prof, i) is None:
        raise PreconditionError(f"seed {prof[i]} of player {i} is not dominated by another single seed")
    u = prof[i]
    if sum(1 for v in prof if v == u) > 1:
        return 0
    return graph.weights[u]

"""Weighted graph model, structural validation and JSON (de)serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np


class GraphValidationError(ValueError):
    """A structural invariant of a graph or game instance is violated."""


class InstanceParseError(ValueError):
    """Input text does not match the instance JSON schema."""


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph on vertices ``0..n-1`` with integer vertex weights.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Instances are
    immutable; use :meth:`from_edges` to build one from an edge list.
    """

    adjacency: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    names: tuple[str | None, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Sequence[int] | None = None,
        names: Sequence[str | None] | None = None,
    ) -> "WeightedGraph":
        if n < 0:
            raise GraphValidationError(f"vertex count must be >= 0, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphValidationError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        w = tuple(int(x) for x in weights) if weights is not None else (1,) * n
        if len(w) != n:
            raise GraphValidationError(f"expected {n} weights, got {len(w)}")
        return cls(
            adjacency=tuple(tuple(sorted(s)) for s in nbrs),
            weights=w,
            names=tuple(names) if names is not None else None,
        )

    @classmethod
    def path(cls, weights: Sequence[int]) -> "WeightedGraph":
        n = len(weights)
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)], weights)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    @cached_property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, weights)`` as contiguous int64 arrays for the kernels."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
        indices = np.fromiter(
            (v for a in self.adjacency for v in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices, np.asarray(self.weights, dtype=np.int64)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            out.append(sorted(comp))
        return out

    def total_weight(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class GameInstance:
    """The competitive diffusion game ``(k, G, w)``."""

    graph: WeightedGraph
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise GraphValidationError(f"player count k must be an integer >= 1, got {self.k!r}")

    @property
    def n(self) -> int:
        return self.graph.n


def validate(adjacency: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]) -> str | None:
    """Return a description of the first violated structural invariant, or ``None``.

    Accepts a raw adjacency mapping (possibly with gaps or asymmetries), which
    is what untrusted input looks like before a :class:`WeightedGraph` exists.
    """
    if isinstance(adjacency, Mapping):
        items = dict(adjacency)
    else:
        items = dict(enumerate(adjacency))
    ids = sorted(items)
    for expect, got in enumerate(ids):
        if expect != got:
            return f"id gap: expected vertex {expect}, found {got}"
    for u in ids:
        seen: set[int] = set()
        for v in items[u]:
            if v == u:
                return f"self-loop at vertex {u}"
            if v in seen:
                return f"duplicate edge ({u}, {v})"
            seen.add(v)
            if v not in items:
                return f"vertex {u} lists unknown neighbour {v}"
            if u not in items[v]:
                return f"asymmetric adjacency: {v} in N({u}) but {u} not in N({v})"
    return None


def validate_graph(graph: WeightedGraph) -> str | None:
    problem = validate(graph.adjacency)
    if problem is None and len(graph.weights) != graph.n:
        problem = f"expected {graph.n} weights, got {len(graph.weights)}"
    return problem


def _require_int(value: object, where: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceParseError(f"{where}: expected integer, got {value!r}")
    return value


def instance_from_dict(data: object) -> GameInstance:
    if not isinstance(data, dict):
        raise InstanceParseError("top level: expected an object with keys 'k', 'vertices', 'edges'")
    for key in ("k", "vertices", "edges"):
        if key not in data:
            raise InstanceParseError(f"missing field '{key}'")
    k = _require_int(data["k"], "field 'k'")
    verts = data["vertices"]
    if not isinstance(verts, list):
        raise InstanceParseError("field 'vertices': expected a list")
    by_id: dict[int, tuple[int, str | None]] = {}
    for pos, entry in enumerate(verts):
        if not isinstance(entry, dict):
            raise InstanceParseError(f"vertices[{pos}]: expected an object")
        vid = _require_int(entry.get("id"), f"vertices[{pos}].id")
        wt = _require_int(entry.get("weight"), f"vertices[{pos}].weight")
        name = entry.get("name")
        if name is not None and not isinstance(name, str):
            raise InstanceParseError(f"vertices[{pos}].name: expected string, got {name!r}")
        if vid in by_id:
            raise InstanceParseError(f"vertices[{pos}].id: duplicate id {vid}")
        by_id[vid] = (wt, name)
    n = len(by_id)
    if sorted(by_id) != list(range(n)):
        missing = next(i for i in range(n + 1) if i not in by_id)
        raise GraphValidationError(f"id gap: vertex ids must be dense 0..{n - 1}, missing {missing}")
    edges_raw = data["edges"]
    if not isinstance(edges_raw, list):
        raise InstanceParseError("field 'edges': expected a list")
    edges = []
    for pos, e in enumerate(edges_raw):
        if not isinstance(e, list) or len(e) != 2:
            raise InstanceParseError(f"edges[{pos}]: expected a pair [u, v]")
        edges.append((_require_int(e[0], f"edges[{pos}][0]"), _require_int(e[1], f"edges[{pos}][1]")))
    names = [by_id[i][1] for i in range(n)]
    graph = WeightedGraph.from_edges(
        n,
        edges,
        [by_id[i][0] for i in range(n)],
        names if any(x is not None for x in names) else None,
    )
    return GameInstance(graph, k)


def instance_to_dict(instance: GameInstance) -> dict:
    g = instance.graph
    verts = []
    for v in range(g.n):
        entry: dict = {"id": v, "weight": g.weights[v]}
        if g.names is not None and g.names[v] is not None:
            entry["name"] = g.names[v]
        verts.append(entry)
    return {"k": instance.k, "vertices": verts, "edges": [list(e) for e in g.edges()]}


def load(text: str) -> GameInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return instance_from_dict(data)


def save(instance: GameInstance) -> str:
    """Canonical JSON text: edges in lexicographic order, vertices by id."""
    return json.dumps(instance_to_dict(instance), sort_keys=True)

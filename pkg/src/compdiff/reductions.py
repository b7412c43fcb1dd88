"""Hardness gadgets with forward and backward certificate maps.

Three constructions are provided:

* ``is``: an unweighted graph with ``k + 3`` players that has an equilibrium
  iff the source graph has an independent set of size ``k``.
* ``partition-sp``: a series-parallel graph with nonnegative weights and
  ``2n + 4`` players for a Partition instance of ``2n`` values.
* ``partition-forest``: a two-tree forest with arbitrary weights and
  ``2n + 4`` players for Partition with equal-size halves.

Item and vertex indices are 0-based. Role names keep the construction's
1-based positions inside each part (``a_1..a_4``, ``b[j,1]..b[j,5]``,
``b'_1..b'_5``), with ``j`` the 0-based item index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Sequence

from compdiff.diffusion import StrategyProfile, is_nash
from compdiff.graph import GameInstance, WeightedGraph

GadgetKind = Literal["is", "partition-sp", "partition-forest"]
KINDS: tuple[GadgetKind, ...] = ("is", "partition-sp", "partition-forest")


class InvalidCertificate(ValueError):
    """The certificate does not solve the source instance."""


class NotNash(ValueError):
    """A profile handed to the backward map is not an equilibrium."""

    def __init__(self, cex):
        super().__init__(f"profile is not an equilibrium: player {cex.player} gains {cex.gain} at vertex {cex.vertex}")
        self.counterexample = cex


class StandardnessViolation(AssertionError):
    """An equilibrium failed the standard form or yielded an invalid certificate.

    Either outcome contradicts the correctness argument of the reduction.
    """


@dataclass(frozen=True)
class PartitionInstance:
    """Multiset ``s_1..s_2n`` of positive integers (stored 0-based)."""

    values: tuple[int, ...]
    require_equal_halves: bool = False

    def __post_init__(self):
        if not self.values or len(self.values) % 2:
            raise ValueError(f"need an even, nonzero number of values, got {len(self.values)}")
        if any(s <= 0 for s in self.values):
            raise ValueError("partition values must be positive integers")

    @property
    def n(self) -> int:
        """Half the number of values."""
        return len(self.values) // 2

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def alpha(self) -> int:
        if self.total % 2:
            raise ValueError(f"total {self.total} is odd; no partition target exists")
        return self.total // 2

    @property
    def all_even(self) -> bool:
        return all(s % 2 == 0 for s in self.values)

    def doubled(self) -> "PartitionInstance":
        return PartitionInstance(tuple(2 * s for s in self.values), self.require_equal_halves)

    def check(self, subset: Iterable[int]) -> tuple[int, ...]:
        """Validate ``subset`` as a solution and return it sorted.

        Raises:
            InvalidCertificate: on bad indices, unequal sums or a wrong size.
        """
        sub = tuple(sorted(set(int(j) for j in subset)))
        if any(not 0 <= j < len(self.values) for j in sub):
            raise InvalidCertificate(f"index outside 0..{len(self.values) - 1} in {list(sub)}")
        if self.total % 2:
            raise InvalidCertificate(f"total {self.total} is odd")
        got = sum(self.values[j] for j in sub)
        if got != self.alpha:
            raise InvalidCertificate(f"subset sums to {got}, target is {self.alpha}")
        if self.require_equal_halves and len(sub) != self.n:
            raise InvalidCertificate(f"subset has {len(sub)} items, equal halves need {self.n}")
        return sub

    def solutions(self) -> list[tuple[int, ...]]:
        """Every valid subset, by exhaustive search (small instances only)."""
        out = []
        idx = range(len(self.values))
        sizes = [self.n] if self.require_equal_halves else range(len(self.values) + 1)
        if self.total % 2:
            return out
        for r in sizes:
            for sub in combinations(idx, r):
                if sum(self.values[j] for j in sub) == self.alpha:
                    out.append(sub)
        return out


@dataclass(frozen=True)
class GadgetInstance:
    """A constructed game with the role name of every vertex.

    ``roles[name]`` is the vertex id; ``metadata`` records construction
    parameters such as ``lambda``, ``alpha`` and whether values were doubled.
    """

    game: GameInstance
    kind: GadgetKind
    roles: dict[str, int]
    source: object
    metadata: dict = field(default_factory=dict)

    def vertex(self, role: str) -> int:
        return self.roles[role]

    def role_of(self, v: int) -> str:
        return self.game.graph.names[v]

    def role_map(self) -> dict[str, int]:
        return dict(sorted(self.roles.items(), key=lambda kv: kv[1]))


class _Builder:
    def __init__(self):
        self.names: list[str] = []
        self.weights: list[int] = []
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[str, int] = {}

    def add(self, name: str, weight: int = 1) -> int:
        if name in self.roles:
            raise AssertionError(f"duplicate role {name}")
        v = len(self.names)
        self.names.append(name)
        self.weights.append(weight)
        self.roles[name] = v
        return v

    def link(self, a: str, b: str) -> None:
        self.edges.append((self.roles[a], self.roles[b]))

    def graph(self) -> WeightedGraph:
        return WeightedGraph.from_edges(len(self.names), self.edges, self.weights, self.names)


def _four_path(bld: _Builder, end_weight: int) -> None:
    for i, w in enumerate((end_weight, 1, 1, end_weight), start=1):
        bld.add(f"a_{i}", w)
    for i in range(1, 4):
        bld.link(f"a_{i}", f"a_{i + 1}")


def hub_weight(n: int, m: int) -> int:
    """Pendant count ``lambda`` on the hub of the independent-set gadget."""
    return n**3 + 3 * n + m + 6


def build_is_gadget(graph: WeightedGraph, k: int) -> GadgetInstance:
    """Unit-weight gadget with ``k + 3`` players; weights of ``graph`` are ignored."""
    n, m = graph.n, graph.m
    if n < 1:
        raise ValueError("source graph needs at least one vertex")
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = hub_weight(n, m)
    bld = _Builder()
    _four_path(bld, 1)
    for i in range(1, n + 1):
        bld.add(f"a'_{i}")
        bld.link("a_1", f"a'_{i}")
    for i in range(1, n + 1):
        bld.add(f"a''_{i}")
        bld.link("a_4", f"a''_{i}")
    for v in range(n):
        bld.add(f"v_{v}")
    for u, v in graph.edges():
        name = f"b_e[{u},{v}]"
        bld.add(name)
        bld.link(f"v_{u}", name)
        bld.link(name, f"v_{v}")
    for v in range(n):
        for j in range(1, n - graph.degree(v) + 1):
            bld.add(f"d[{v},{j}]")
            bld.link(f"v_{v}", f"d[{v},{j}]")
    bld.add("b")
    for v in range(n):
        bld.link("b", f"v_{v}")
    for i in range(1, lam + 1):
        bld.add(f"b_{i}")
        bld.link("b", f"b_{i}")
    return GadgetInstance(
        game=GameInstance(bld.graph(), k + 3),
        kind="is",
        roles=bld.roles,
        source=graph,
        metadata={"lambda": lam, "k": k, "n": n, "m": m},
    )


def build_partition_sp_gadget(inst: PartitionInstance) -> GadgetInstance:
    alpha = inst.alpha  # rejects an odd total
    bld = _Builder()
    _four_path(bld, 2 * alpha)
    bld.add("b'", alpha)
    bld.add("b''", alpha)
    for j, s in enumerate(inst.values):
        for r, w in enumerate((s, 0, alpha, alpha, 0), start=1):
            bld.add(f"b[{j},{r}]", w)
        for r in range(1, 6):
            bld.link(f"b[{j},{r}]", f"b[{j},{r % 5 + 1}]")
        bld.link("b'", f"b[{j},2]")
        bld.link("b''", f"b[{j},5]")
    return GadgetInstance(
        game=GameInstance(bld.graph(), 2 * inst.n + 4),
        kind="partition-sp",
        roles=bld.roles,
        source=inst,
        metadata={"alpha": alpha},
    )


def build_partition_forest_gadget(inst: PartitionInstance) -> GadgetInstance:
    """Forest gadget; odd values are doubled first and ``metadata["doubled"]`` is set."""
    doubled = not inst.all_even
    work = inst.doubled() if doubled else inst
    alpha = work.alpha
    bld = _Builder()
    _four_path(bld, alpha)
    for i, w in enumerate((alpha + 1, 0, -1, -alpha, alpha + 1), start=1):
        bld.add(f"b'_{i}", w)
    for i in range(1, 5):
        bld.link(f"b'_{i}", f"b'_{i + 1}")
    for j, s in enumerate(work.values):
        bld.add(f"b_{j}", -alpha + s)
        for r, w in enumerate((alpha, alpha, -alpha), start=1):
            bld.add(f"b[{j},{r}]", w)
            bld.link(f"b_{j}", f"b[{j},{r}]")
        bld.link("b'_4", f"b_{j}")
    return GadgetInstance(
        game=GameInstance(bld.graph(), 2 * inst.n + 4),
        kind="partition-forest",
        roles=bld.roles,
        source=inst,
        metadata={"alpha": alpha, "doubled": doubled, "values": list(work.values)},
    )


def build_gadget(kind: GadgetKind, source, k: int | None = None) -> GadgetInstance:
    if kind == "is":
        if k is None:
            raise ValueError("the independent-set gadget needs k")
        return build_is_gadget(source, k)
    if kind == "partition-sp":
        return build_partition_sp_gadget(source)
    if kind == "partition-forest":
        return build_partition_forest_gadget(source)
    raise ValueError(f"unknown gadget kind {kind!r}")


def expected_size(gadget: GadgetInstance) -> int:
    """Vertex count predicted by the construction's size formula."""
    if gadget.kind == "is":
        g: WeightedGraph = gadget.source
        n, m = g.n, g.m
        return 4 + 2 * n + n + m + sum(n - g.degree(v) for v in range(n)) + 1 + gadget.metadata["lambda"]
    n = gadget.source.n
    if gadget.kind == "partition-sp":
        return 4 + 10 * n + 2
    return 4 + 8 * n + 5


# ---------------------------------------------------------------------------
# certificates


def _check_independent(graph: WeightedGraph, k: int, certificate: Iterable[int]) -> tuple[int, ...]:
    chosen = tuple(sorted(set(int(v) for v in certificate)))
    if any(not 0 <= v < graph.n for v in chosen):
        raise InvalidCertificate(f"vertex outside 0..{graph.n - 1} in {list(chosen)}")
    for u, v in combinations(chosen, 2):
        if graph.has_edge(u, v):
            raise InvalidCertificate(f"vertices {u} and {v} are adjacent")
    if len(chosen) < k:
        raise InvalidCertificate(f"independent set has {len(chosen)} vertices, need {k}")
    return chosen


def certificate_to_profile(gadget: GadgetInstance, certificate: Iterable[int]) -> StrategyProfile:
    """The equilibrium prescribed for a valid certificate.

    For the independent-set gadget the ``k`` smallest vertices of a larger
    set are used. Player order: certificate players, hubs, then ``a_2, a_3``.

    Raises:
        InvalidCertificate: if the certificate does not solve the source instance.
    """
    r = gadget.roles
    if gadget.kind == "is":
        k = gadget.metadata["k"]
        chosen = _check_independent(gadget.source, k, certificate)[:k]
        seats = [r[f"v_{v}"] for v in chosen] + [r["b"]]
    else:
        inst: PartitionInstance = gadget.source
        sub = set(inst.check(certificate))
        if gadget.kind == "partition-sp":
            seats = [r[f"b[{j},{4 if j in sub else 3}]"] for j in range(len(inst.values))]
            seats += [r["b'"], r["b''"]]
        else:
            if len(sub) != inst.n:
                raise InvalidCertificate(f"subset has {len(sub)} items, the forest gadget needs {inst.n}")
            seats = [r[f"b[{j},{q}]"] for j in sorted(sub) for q in (1, 2)]
            seats += [r["b'_1"], r["b'_5"]]
    return tuple(seats + [r["a_2"], r["a_3"]])


def expected_utilities(gadget: GadgetInstance, certificate: Iterable[int]) -> tuple[int, ...]:
    """Per-player utilities of :func:`certificate_to_profile` as derived in closed form."""
    if gadget.kind == "is":
        g: WeightedGraph = gadget.source
        k, n = gadget.metadata["k"], g.n
        chosen = set(_check_independent(g, k, certificate)[:k])
        rest = [v for v in range(n) if v not in chosen]
        inner = sum(1 for u, v in g.edges() if u not in chosen and v not in chosen)
        hub = 1 + gadget.metadata["lambda"] + len(rest) + sum(n - g.degree(v) for v in rest) + inner
        return (n + 1,) * k + (hub, n + 2, n + 2)
    inst: PartitionInstance = gadget.source
    inst.check(certificate)
    alpha = gadget.metadata["alpha"]
    n = inst.n
    if gadget.kind == "partition-sp":
        return (2 * alpha,) * (2 * n + 2) + (2 * alpha + 1,) * 2
    return (alpha,) * (2 * n) + (alpha + 1,) * 4


# standard-form predicates: pure functions of the profile multiset


def _counts(profile: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in profile:
        out[v] = out.get(v, 0) + 1
    return out


def standard_conditions(gadget: GadgetInstance, profile: Sequence[int]) -> dict[str, bool]:
    """Truth value of each standard-form condition, keyed ``A.1``..``C.3``."""
    c = _counts(profile)
    r = gadget.roles
    at = lambda name: c.get(r[name], 0)  # noqa: E731
    one_each = lambda *names: all(at(x) == 1 for x in names)  # noqa: E731
    if gadget.kind == "is":
        k = gadget.metadata["k"]
        vs = [r[f"v_{v}"] for v in range(gadget.source.n)]
        on_v = [c.get(v, 0) for v in vs]
        return {
            "A.1": sum(1 for x in on_v if x == 1) == k and all(x <= 1 for x in on_v),
            "A.2": at("b") == 1,
            "A.3": one_each("a_2", "a_3"),
        }
    inst: PartitionInstance = gadget.source
    m = len(inst.values)
    if gadget.kind == "partition-sp":
        b1 = all(
            at(f"b[{j},3]") + at(f"b[{j},4]") == 1 and at(f"b[{j},1]") + at(f"b[{j},2]") + at(f"b[{j},5]") == 0
            for j in range(m)
        )
        return {"B.1": b1, "B.2": one_each("b'", "b''"), "B.3": one_each("a_2", "a_3")}
    ruled = []
    ok = True
    for j in range(m):
        leaves = (at(f"b[{j},1]"), at(f"b[{j},2]"))
        empty = at(f"b_{j}") + at(f"b[{j},3]") == 0
        if leaves == (1, 1) and empty:
            ruled.append(j)
        elif sum(leaves) or not empty:
            ok = False
    return {
        "C.1": ok and len(ruled) == inst.n,
        "C.2": one_each("b'_1", "b'_5"),
        "C.3": one_each("a_2", "a_3"),
    }


def is_standard(gadget: GadgetInstance, profile: Sequence[int]) -> bool:
    return all(standard_conditions(gadget, profile).values())


def profile_to_certificate(gadget: GadgetInstance, profile: Sequence[int]) -> tuple[int, ...]:
    """Read the source certificate off an equilibrium of the gadget.

    Raises:
        NotNash: if ``profile`` is not an equilibrium.
        StandardnessViolation: if an equilibrium is not in standard form or
            its certificate is invalid.
    """
    cex = is_nash(gadget.game, profile)
    if cex is not None:
        raise NotNash(cex)
    conds = standard_conditions(gadget, profile)
    failed = [name for name, ok in conds.items() if not ok]
    if failed:
        raise StandardnessViolation(f"equilibrium violates standard-form conditions {', '.join(failed)}")
    c = _counts(profile)
    r = gadget.roles
    if gadget.kind == "is":
        cert = tuple(v for v in range(gadget.source.n) if c.get(r[f"v_{v}"], 0))
        try:
            return _check_independent(gadget.source, gadget.metadata["k"], cert)
        except InvalidCertificate as exc:
            raise StandardnessViolation(f"extracted set is not a certificate: {exc}") from exc
    inst: PartitionInstance = gadget.source
    if gadget.kind == "partition-sp":
        cert = tuple(j for j in range(len(inst.values)) if c.get(r[f"b[{j},4]"], 0))
    else:
        cert = tuple(j for j in range(len(inst.values)) if c.get(r[f"b[{j},1]"], 0))
    try:
        return inst.check(cert)
    except InvalidCertificate as exc:
        raise StandardnessViolation(f"extracted subset is not a certificate: {exc}") from exc


def standard_profiles(gadget: GadgetInstance):
    """Every standard-form profile in the prescribed player order (partition gadgets).

    Useful for exhaustive search on tiny instances, where the full profile
    space is far too large.
    """
    if gadget.kind not in ("partition-sp", "partition-forest"):
        raise ValueError("standard-profile enumeration is defined for partition gadgets")
    r = gadget.roles
    inst: PartitionInstance = gadget.source
    m = len(inst.values)
    tail = [r["a_2"], r["a_3"]]
    if gadget.kind == "partition-sp":
        for mask in range(1 << m):
            seats = [r[f"b[{j},{4 if mask >> j & 1 else 3}]"] for j in range(m)]
            yield tuple(seats + [r["b'"], r["b''"]] + tail)
    elif gadget.kind == "partition-forest":
        for sub in combinations(range(m), inst.n):
            seats = [r[f"b[{j},{q}]"] for j in sub for q in (1, 2)]
            yield tuple(seats + [r["b'_1"], r["b'_5"]] + tail)

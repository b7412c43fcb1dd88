"""Dynamic programs over a single weighted path.

:class:`SubEquilibriumTable` is the boundary DP: cells
``(kappa, (x, a), (y, b))`` record whether some profile with ``a`` players on
the rightmost occupied vertex ``x`` and ``b`` players on the next occupied
vertex ``y`` is a Nash sub-equilibrium for boundary ``t`` (every player off
``x`` earns at least ``t``, cannot gain by moving left of ``x``, and no extra
player placed left of ``x`` earns more than ``t``).

:func:`nash_frontier` is an exact companion that does not assume a boundary:
it keeps, per state, the Pareto set of (smallest utility, largest extra-player
utility) over genuine path equilibria. Forest solving uses it for equilibria in
which one path's extra-player potential exceeds its own poorest player.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from compdiff.paths.segments import NEG_INF, PathModel, profile_of

POS_INF = float("inf")

# (kappa, x, a, y, b); y == -1 with b == 0 when x holds every player
Cell = tuple[int, int, int, int, int]


@dataclass
class SubEquilibriumTable:
    """Boolean table ``f_t`` stored sparsely as the set of true cells.

    ``pred[cell]`` is the ``(z, c)`` of the sub-equilibrium the cell extends,
    or ``None`` for an initialization cell (all players on ``x``).
    """

    t: int
    n: int
    max_players: int
    pred: dict[Cell, tuple[int, int] | None] = field(default_factory=dict)
    final: dict[int, Cell] = field(default_factory=dict)

    def is_true(self, cell: Cell) -> bool:
        return cell in self.pred

    def groups(self, cell: Cell) -> list[tuple[int, int]]:
        """Occupied ``(vertex, count)`` pairs of the witness behind ``cell``, left to right."""
        out = []
        while True:
            kappa, x, a, y, b = cell
            out.append((x, a))
            prev = self.pred[cell]
            if prev is None:
                break
            z, c = prev
            cell = (kappa - a, y, b, z, c)
        out.reverse()
        return out


def build_table(path: PathModel, t: int, max_players: int | None = None) -> SubEquilibriumTable:
    n = path.n
    kmax = 2 * n if max_players is None else max_players
    table = SubEquilibriumTable(t=t, n=n, max_players=kmax)
    pred = table.pred
    by_kappa: list[list[Cell]] = [[] for _ in range(kmax + 1)]

    # initialization: all kappa players on x; only extras left of x constrain it
    for kappa in range(1, kmax + 1):
        for x in range(n):
            if path.segment_extra_max(-1, False, x, kappa == 1) <= t:
                cell = (kappa, x, kappa, -1, 0)
                pred[cell] = None
                by_kappa[kappa].append(cell)

    for kappa in range(1, kmax):
        for cell in by_kappa[kappa]:
            _, y, b, z, c = cell
            y_live, z_live = b == 1, c == 1
            for x in range(y + 1, n):
                for a in range(1, kmax - kappa + 1):
                    x_live = a == 1
                    u_y = path.group_utility(y, b, z, z_live, x, x_live)
                    if u_y < t:
                        continue
                    if path.near_deviation_max(y, b, z, z_live, x, x_live) > u_y:
                        continue
                    if path.segment_extra_max(y, y_live, x, x_live) > t:
                        continue
                    new = (kappa + a, x, a, y, b)
                    if new not in pred:
                        pred[new] = (z, c)
                        by_kappa[kappa + a].append(new)

    for kappa in range(1, kmax + 1):
        for cell in by_kappa[kappa]:
            if _closes(path, t, cell):
                table.final[kappa] = cell
                break
    return table


def _closes(path: PathModel, t: int, cell: Cell) -> bool:
    """Whether a sub-equilibrium cell is already an equilibrium with boundary ``t``."""
    _, x, a, y, b = cell
    n = path.n
    if path.segment_extra_max(x, a == 1, n, False) > t:
        return False
    u_x = path.group_utility(x, a, y, b == 1, n, False)
    if u_x < t:
        return False
    return path.near_deviation_max(x, a, y, b == 1, n, False) <= u_x


def admissible_counts_weighted(
    weights: Sequence[int] | PathModel, t: int, max_players: int | None = None
) -> set[int]:
    """All ``kappa`` such that the path admits ``kappa`` players with boundary ``t``.

    ``max_players`` defaults to ``2n``. With no players the lone extra player
    floods the path, so ``0`` is admissible iff the total weight is at most ``t``.
    """
    path = weights if isinstance(weights, PathModel) else PathModel(weights)
    if t < 0:
        raise ValueError(f"boundary must be >= 0, got {t}")
    table = build_table(path, t, max_players)
    out = set(table.final)
    if path.total <= t:
        out.add(0)
    return out


def admissible_profiles(
    path: PathModel, t: int, max_players: int | None = None
) -> dict[int, tuple[int, ...]]:
    """Witness profile (0-based positions, sorted) for each admissible ``kappa``."""
    table = build_table(path, t, max_players)
    out = {kappa: profile_of(table.groups(cell)) for kappa, cell in table.final.items()}
    if path.total <= t:
        out[0] = ()
    return out


# ---------------------------------------------------------------------------
# exact (mu, nu) frontier of path equilibria


@dataclass(frozen=True)
class FrontierPoint:
    mu: float
    nu: float
    profile: tuple[int, ...]


def _insert_pareto(points: dict, key: tuple, back) -> bool:
    """Keep ``points`` as an antichain: higher first coordinate, lower second wins."""
    umin, emax = key
    for pu, pe in points:
        if pu >= umin and pe <= emax:
            return False
    for pk in [p for p in points if umin >= p[0] and emax <= p[1]]:
        del points[pk]
    points[key] = back
    return True


def nash_frontier(weights: Sequence[int] | PathModel, max_players: int) -> dict[int, list[FrontierPoint]]:
    """Pareto-optimal ``(mu, nu)`` over all Nash equilibria of each ``(kappa, P, w)``.

    ``mu`` is the smallest player utility and ``nu`` the best utility of an extra
    player. ``kappa = 0`` maps to ``(inf, total weight)``.
    """
    path = weights if isinstance(weights, PathModel) else PathModel(weights)
    n = path.n
    # state (kappa, x, a, y, b) -> {(umin over groups left of x, emax over gaps left of y): back}
    states: dict[Cell, dict] = {}
    by_kappa: list[list[Cell]] = [[] for _ in range(max_players + 1)]
    for kappa in range(1, max_players + 1):
        for x in range(n):
            key = (kappa, x, kappa, -1, 0)
            states[key] = {(POS_INF, NEG_INF): None}
            by_kappa[kappa].append(key)

    for kappa in range(1, max_players):
        for key in by_kappa[kappa]:
            _, x, a, y, b = key
            x_live, y_live = a == 1, b == 1
            gap_before = path.segment_extra_max(y, y_live, x, x_live)
            for nx in range(x + 1, n):
                for na in range(1, max_players - kappa + 1):
                    nx_live = na == 1
                    u_x = path.group_utility(x, a, y, y_live, nx, nx_live)
                    if u_x < 0:
                        continue
                    if path.near_deviation_max(x, a, y, y_live, nx, nx_live) > u_x:
                        continue
                    gap_new = path.segment_extra_max(x, x_live, nx, nx_live)
                    new = (kappa + na, nx, na, x, a)
                    for (umin, emax) in list(states[key]):
                        if u_x < emax or gap_new > umin:
                            continue
                        point = (min(umin, u_x), max(emax, gap_before))
                        bucket = states.get(new)
                        if bucket is None:
                            bucket = states[new] = {}
                            by_kappa[kappa + na].append(new)
                        _insert_pareto(bucket, point, (key, (umin, emax)))

    out: dict[int, list[FrontierPoint]] = {0: [FrontierPoint(POS_INF, path.total, ())]}
    for kappa in range(1, max_players + 1):
        finals: dict = {}
        for key in by_kappa[kappa]:
            _, x, a, y, b = key
            y_live = b == 1
            u_x = path.group_utility(x, a, y, y_live, n, False)
            if y >= 0 and u_x < 0:
                continue
            if path.near_deviation_max(x, a, y, y_live, n, False) > u_x:
                continue
            gap_last = path.segment_extra_max(x, a == 1, n, False)
            gap_before = path.segment_extra_max(y, y_live, x, a == 1)
            for (umin, emax) in states[key]:
                if u_x < emax or gap_last > umin:
                    continue
                mu = min(umin, u_x)
                nu = max(emax, gap_before, gap_last, 0)
                _insert_pareto(finals, (mu, nu), (key, (umin, emax)))
        if finals:
            out[kappa] = sorted(
                (FrontierPoint(mu, nu, _rebuild(states, back)) for (mu, nu), back in finals.items()),
                key=lambda p: (-p.mu, p.nu),
            )
    return out


def _rebuild(states: dict, back) -> tuple[int, ...]:
    groups = []
    key, point = back
    while True:
        _, x, a, _, _ = key
        groups.append((x, a))
        prev = states[key][point]
        if prev is None:
            break
        key, point = prev
    groups.reverse()
    return profile_of(groups)

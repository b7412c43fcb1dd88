"""Closed-form territories on a single weighted path.

On a path a live seed (one player) claims every vertex strictly closer to it
than to the neighbouring live seed; an equidistant vertex turns neutral. A
collision seed (two or more players) is neutral from time one and blocks
propagation, so its neighbours take the whole gap up to it.

Positions are 0-based. A missing left neighbour is encoded as ``-1`` and a
missing right neighbour as ``n``; liveness of a missing neighbour is ignored.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import accumulate
from typing import Sequence

NEG_INF = float("-inf")


class PathModel:
    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(int(w) for w in weights)
        self.n = len(self.weights)
        self._prefix = (0, *accumulate(self.weights))
        # per-instance caches; bound methods keep the model alive anyway
        self.live_utility = lru_cache(maxsize=None)(self._live_utility)
        self.segment_extra_max = lru_cache(maxsize=None)(self._segment_extra_max)
        self.near_deviation_max = lru_cache(maxsize=None)(self._near_deviation_max)

    def range_sum(self, lo: int, hi: int) -> int:
        """Sum of weights on ``lo..hi`` inclusive (0 when empty)."""
        if hi < lo:
            return 0
        return self._prefix[hi + 1] - self._prefix[lo]

    @property
    def total(self) -> int:
        return self._prefix[-1]

    def _left_share(self, p: int, left: int, left_live: bool) -> int:
        if left < 0:
            return self.range_sum(0, p - 1)
        if not left_live:
            return self.range_sum(left + 1, p - 1)
        return self.range_sum((left + p) // 2 + 1, p - 1)

    def _right_share(self, p: int, right: int, right_live: bool) -> int:
        if right >= self.n:
            return self.range_sum(p + 1, self.n - 1)
        if not right_live:
            return self.range_sum(p + 1, right - 1)
        return self.range_sum(p + 1, (p + right - 1) // 2)

    def _live_utility(self, p: int, left: int, left_live: bool, right: int, right_live: bool) -> int:
        """Utility of a sole player at ``p`` between the given neighbour seeds."""
        return self.weights[p] + self._left_share(p, left, left_live) + self._right_share(p, right, right_live)

    def group_utility(self, p: int, count: int, left: int, left_live: bool, right: int, right_live: bool) -> int:
        if count != 1:
            return 0
        return self.live_utility(p, left, left_live, right, right_live)

    def _segment_extra_max(self, left: int, left_live: bool, right: int, right_live: bool) -> float:
        """Best utility of one extra seed placed strictly between two seeds (``-inf`` if no room)."""
        best = NEG_INF
        for v in range(left + 1, right):
            u = self.live_utility(v, left, left_live, right, right_live)
            if u > best:
                best = u
        return best

    def _near_deviation_max(
        self, p: int, count: int, left: int, left_live: bool, right: int, right_live: bool
    ) -> float:
        """Best utility of one player of the group at ``p`` moving inside ``(left, right)``.

        The mover leaves ``count - 1`` players behind at ``p``. Moves onto ``p``
        itself are excluded (that is the current profile).
        """
        best = NEG_INF
        if count == 1:
            for v in range(left + 1, right):
                if v == p:
                    continue
                u = self.live_utility(v, left, left_live, right, right_live)
                if u > best:
                    best = u
            return best
        rest_live = count - 1 == 1
        for v in range(left + 1, p):
            u = self.live_utility(v, left, left_live, p, rest_live)
            if u > best:
                best = u
        for v in range(p + 1, right):
            u = self.live_utility(v, p, rest_live, right, right_live)
            if u > best:
                best = u
        return best


def groups_of(profile: Sequence[int]) -> list[tuple[int, int]]:
    """Collapse a seed multiset into sorted ``(position, count)`` groups."""
    counts: dict[int, int] = {}
    for v in profile:
        counts[v] = counts.get(v, 0) + 1
    return sorted(counts.items())


def profile_of(groups: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    return tuple(p for p, c in groups for _ in range(c))

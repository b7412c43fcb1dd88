"""Multiple-choice subset sum: one count per path, totals exactly ``k``."""

from __future__ import annotations

from typing import Iterable, Sequence


def combine_counts(choices: Sequence[Iterable[int]], k: int) -> tuple[int, ...] | None:
    """Pick one value from each set so that the picks sum to ``k``.

    Among all valid selections the lexicographically smallest is returned, so
    the answer is deterministic. Returns ``None`` when no selection exists.
    """
    sets = [sorted({int(x) for x in c if 0 <= x <= k}) for c in choices]
    m = len(sets)
    # reach[j]: sums attainable with paths j..m-1
    reach: list[set[int]] = [set() for _ in range(m + 1)]
    reach[m] = {0}
    for j in range(m - 1, -1, -1):
        reach[j] = {s + x for s in reach[j + 1] for x in sets[j] if s + x <= k}
    if k not in reach[0]:
        return None
    picks, rest = [], k
    for j in range(m):
        x = next(x for x in sets[j] if rest - x in reach[j + 1])
        picks.append(x)
        rest -= x
    return tuple(picks)

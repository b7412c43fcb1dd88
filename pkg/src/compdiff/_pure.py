"""Pure-Python diffusion kernels.

Same signatures and results as the compiled ``_kernels`` extension; used when
the extension is unavailable or ``COMPDIFF_PURE=1`` is set.
"""

from __future__ import annotations

import numpy as np

NEUTRAL = -1
UNDOMINATED = -2
_CONFLICT = -3


def _run(indptr, indices, weights, profile):
    n = len(indptr) - 1
    owner = [UNDOMINATED] * n
    time = [0] * n
    count: dict[int, int] = {}
    for s in profile:
        count[s] = count.get(s, 0) + 1
    frontier = []
    for i, s in enumerate(profile):
        if owner[s] != UNDOMINATED:
            continue
        time[s] = 1
        if count[s] == 1:
            owner[s] = i
            frontier.append(s)
        else:
            owner[s] = NEUTRAL
    t = 1
    while frontier:
        t += 1
        claim: dict[int, int] = {}
        for u in frontier:
            p = owner[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if owner[v] != UNDOMINATED:
                    continue
                c = claim.get(v)
                if c is None:
                    claim[v] = p
                elif c != p:
                    claim[v] = _CONFLICT
        frontier = []
        for v, c in claim.items():
            time[v] = t
            if c == _CONFLICT:
                owner[v] = NEUTRAL
            else:
                owner[v] = c
                frontier.append(v)
    return owner, time


def _utilities(owner, weights, k):
    util = [0] * k
    for v, p in enumerate(owner):
        if p >= 0:
            util[p] += weights[v]
    return util


def simulate(indptr, indices, weights, profile):
    """Run the synchronous diffusion; return ``(owner, time, utilities)`` arrays."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    weights = [int(x) for x in weights]
    profile = [int(x) for x in profile]
    owner, time = _run(indptr, indices, weights, profile)
    util = _utilities(owner, weights, len(profile))
    return (
        np.asarray(owner, dtype=np.int64),
        np.asarray(time, dtype=np.int64),
        np.asarray(util, dtype=np.int64),
    )


def _player_utility(indptr, indices, weights, profile, i):
    owner, _ = _run(indptr, indices, weights, profile)
    return sum(weights[v] for v, p in enumerate(owner) if p == i)


def deviation_utility(indptr, indices, weights, profile, i, v):
    prof = [int(x) for x in profile]
    prof[i] = int(v)
    return _player_utility(list(indptr), list(indices), list(weights), prof, i)


def first_improvement(indptr, indices, weights, profile):
    """First ``(player, vertex, gain)`` with a strict gain, scanning players then vertices."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    weights = [int(x) for x in weights]
    prof = [int(x) for x in profile]
    n = len(indptr) - 1
    owner, _ = _run(indptr, indices, weights, prof)
    base = _utilities(owner, weights, len(prof))
    done: set[int] = set()
    for i, s in enumerate(prof):
        # co-located players have identical deviation values
        if s in done:
            continue
        done.add(s)
        for v in range(n):
            if v == s:
                continue
            prof[i] = v
            u = _player_utility(indptr, indices, weights, prof, i)
            if u > base[i]:
                prof[i] = s
                return i, v, u - base[i]
        prof[i] = s
    return None


def extra_potential(indptr, indices, weights, profile):
    """Best utility an additional player could obtain by joining ``profile``."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    weights = [int(x) for x in weights]
    prof = [int(x) for x in profile] + [0]
    k = len(prof) - 1
    n = len(indptr) - 1
    best = None
    for v in range(n):
        prof[k] = v
        u = _player_utility(indptr, indices, weights, prof, k)
        if best is None or u > best:
            best = u
    return best

"""Closed-form admissibility and constructive equilibria on unit-weight paths."""

from __future__ import annotations

from math import ceil


def _check_t(t: int) -> None:
    if t < 1:
        raise ValueError(f"boundary must be a positive integer, got {t}")


def admits(n: int, kappa: int, t: int) -> bool:
    """Whether a unit-weight path of ``n`` vertices admits ``kappa`` players with boundary ``t``.

    Direct evaluation of the per-``kappa`` inequalities.
    """
    _check_t(t)
    if kappa == 0:
        return n <= t
    if kappa == 1:
        return t <= n <= 2 * t + 1
    if kappa == 2:
        return 2 * t <= n <= 2 * t + 2
    if kappa == 3:
        return t == 1 and n in (3, 4, 5)
    lower = (kappa + 1) * t - 1 if kappa % 2 else kappa * t
    return lower <= n <= (2 * kappa - 4) * t + kappa


def admissible_range_unweighted(n: int, t: int) -> set[int]:
    """All admissible player counts, read off the case table by ``(n, t)``."""
    _check_t(t)
    if n <= t - 1:
        return {0}
    if n == t:
        return {0, 1}
    if n <= 2 * t - 1:
        return {1}
    if n <= 2 * t + 1:
        return {1, 2, 3} if n == 3 else {1, 2}
    if n == 2 * t + 2:
        return {2, 3, 4} if n == 4 else {2}
    if n <= 4 * t - 1:
        return set()
    # here 4t <= n, and n >= 5 because n >= 2t + 3 >= 5
    lo = ceil((n + 4 * t) / (2 * t + 1))
    k_odd = (n - t + 1) // t
    if k_odd % 2 == 0:
        k_odd -= 1
    k_even = n // t
    if k_even % 2:
        k_even -= 1
    return set(range(lo, max(k_odd, k_even) + 1))


def count_bounds(n: int, t: int) -> tuple[int, int] | None:
    """``(k_min, k_max)`` of the admissible set, or ``None`` when it is empty."""
    ks = admissible_range_unweighted(n, t)
    if not ks:
        return None
    return min(ks), max(ks)


def _gap_bounds(kappa: int, t: int) -> list[tuple[int, int]]:
    """Allowed ``(min, max)`` of each gap ``delta_0..delta_kappa`` for ``kappa >= 4``."""
    wide = (2 * t - 2, 2 * t)
    free = (0, 2 * t)
    last_inner = kappa - 2 if kappa % 2 == 0 else kappa - 3
    out = [(t - 1, t), (0, 0)]
    for i in range(2, last_inner + 1):
        out.append(wide if i % 2 == 0 else free)
    if kappa % 2:
        out.append(wide)
    out += [(0, 0), (t - 1, t)]
    return out


def equilibrium_profile(n: int, kappa: int, t: int) -> tuple[int, ...]:
    """A sorted equilibrium with ``kappa`` players whose boundary is ``t``.

    Raises:
        ValueError: if the path does not admit ``kappa`` players with ``t``.
    """
    if not admits(n, kappa, t):
        raise ValueError(f"path of {n} vertices does not admit {kappa} players with boundary {t}")
    if kappa == 0:
        return ()
    c = (n - 1) // 2
    if kappa == 1:
        return (c,)
    if kappa == 2:
        return (c, c + 1) if n % 2 else (n // 2 - 1, n // 2)
    if kappa == 3:
        return (c - 1, c, c + 1)
    bounds = _gap_bounds(kappa, t)
    gaps = [lo for lo, _ in bounds]
    # raise gaps left to right until the vertex count matches
    spare = n - kappa - sum(gaps)
    for i, (lo, hi) in enumerate(bounds):
        step = min(spare, hi - lo)
        gaps[i] += step
        spare -= step
    assert spare == 0
    pos, out = gaps[0], []
    for i in range(kappa):
        out.append(pos)
        pos += gaps[i + 1] + 1
    return tuple(out)

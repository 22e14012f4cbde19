"""Instances on which the greedy families go wrong, with their optimal paginations."""

from __future__ import annotations

from itertools import combinations

from ..core import Instance, Pagination


def _check_even(capacity: int, minimum: int) -> None:
    if capacity % 2 or capacity < minimum:
        raise ValueError(f"capacity must be even and at least {minimum}, got {capacity}")


def af_adversarial(capacity: int) -> tuple[Instance, Pagination, list[int]]:
    """Two disjoint alphabets of ``capacity`` symbols, every half-size subset of each.

    Returns the instance, its 2-page optimum and the alternating order that
    makes every Any Fit strategy open ``binom(C, C/2)`` pages.
    """
    _check_even(capacity, 2)
    half = capacity // 2
    xs = [f"x{i}" for i in range(1, capacity + 1)]
    ys = [f"y{i}" for i in range(1, capacity + 1)]
    tx = list(combinations(xs, half))
    ty = list(combinations(ys, half))
    instance = Instance.from_sets(tx + ty, capacity)
    n = len(tx)
    optimum = Pagination([range(n), range(n, 2 * n)])
    worst = [j for i in range(n) for j in (i, n + i)]
    return instance, optimum, worst


def specialized_adversarial(capacity: int) -> tuple[Instance, Pagination, Pagination]:
    """Instance whose tiles all look alike to metric-driven greedy rules.

    Returns the instance, its optimum in ``C/2 + 1`` pages and a valid
    "locked" pagination in ``3C/2`` pages.
    """
    _check_even(capacity, 4)
    c = capacity
    s0 = [str(i) for i in range(1, c + 1)]
    t0 = [frozenset(t) for t in combinations(s0, c - 1)]
    families = [[tuple(sorted(t, key=s0.index)) for t in t0]]
    for i in range(c // 2):
        core = sorted(t0[2 * i] & t0[2 * i + 1], key=s0.index)
        families.append(list(combinations(core + ["a", "b"], c - 1)))
    flat = [t for fam in families for t in fam]
    instance = Instance.from_sets(flat, c)
    index = {frozenset(t): j for j, t in enumerate(flat)}

    optimum, start = [], 0
    for fam in families:
        optimum.append(range(start, start + len(fam)))
        start += len(fam)

    locked, rest = [], []
    for i in range(c // 2):
        first, second = t0[2 * i], t0[2 * i + 1]
        core = first & second
        locked.append([index[first], index[core | {"a"}]])
        locked.append([index[second], index[core | {"b"}]])
    for fam in families[1:]:
        rest.append([index[frozenset(t)] for t in fam if "a" in t and "b" in t])
    return instance, Pagination(optimum), Pagination(locked + rest)

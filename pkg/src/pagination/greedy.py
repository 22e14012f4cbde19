"""Any Fit adaptations, Best Fusion and the decantation post-treatment."""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .core import EPS, Instance, Pagination, PaginationError, connected_components, is_valid


class AnyFitStrategy(enum.Enum):
    NEXT = "next"
    FIRST = "first"
    BEST_BEFORE = "best_before"
    BEST_AFTER = "best_after"
    WORST = "worst"
    ALMOST_WORST = "almost_worst"


def _check_order(instance: Instance, order: Sequence[int] | None) -> list[int]:
    n = instance.n_tiles
    if order is None:
        return list(range(n))
    order = list(order)
    if sorted(order) != list(range(n)):
        raise PaginationError("order must be a permutation of the tile indices")
    return order


def first_fit_insert(
    instance: Instance,
    groups: list[list[int]],
    unions: list[int],
    items: Iterable[int],
) -> None:
    """Place tiles by First Fit into ``groups`` in place, opening pages as needed.

    ``unions`` holds the symbol bitset of each group and is kept in sync.
    """
    tiles, cap = instance.tiles, instance.capacity
    for j in items:
        t = tiles[j]
        for k, u in enumerate(unions):
            m = u | t
            if m.bit_count() <= cap:
                groups[k].append(j)
                unions[k] = m
                break
        else:
            if t.bit_count() > cap:
                raise PaginationError(f"tile {j} exceeds capacity {cap}")
            groups.append([j])
            unions.append(t)


def any_fit(
    instance: Instance,
    order: Sequence[int] | None = None,
    strategy: AnyFitStrategy | str = AnyFitStrategy.FIRST,
) -> Pagination:
    """Online Any Fit packing of the tiles taken in ``order``.

    Ties between eligible pages go to the lowest page index.
    """
    instance.check_feasible()
    strategy = AnyFitStrategy(strategy)
    order = _check_order(instance, order)
    if strategy is AnyFitStrategy.FIRST:
        groups: list[list[int]] = []
        first_fit_insert(instance, groups, [], order)
        return Pagination(groups)

    tiles, cap = instance.tiles, instance.capacity
    groups, unions = [], []
    for j in order:
        t = tiles[j]
        target = None
        if strategy is AnyFitStrategy.NEXT:
            if unions and (unions[-1] | t).bit_count() <= cap:
                target = len(unions) - 1
        else:
            eligible = []
            for k, u in enumerate(unions):
                after = (u | t).bit_count()
                if after <= cap:
                    before = u.bit_count()
                    eligible.append((k, before, after))
            if eligible:
                if strategy is AnyFitStrategy.BEST_BEFORE:
                    target = max(eligible, key=lambda e: (e[1], -e[0]))[0]
                elif strategy is AnyFitStrategy.BEST_AFTER:
                    target = max(eligible, key=lambda e: (e[2], -e[0]))[0]
                else:
                    ranked = sorted(eligible, key=lambda e: (e[1], e[0]))
                    if strategy is AnyFitStrategy.ALMOST_WORST and len(ranked) > 1:
                        target = ranked[1][0]
                    else:
                        target = ranked[0][0]
        if target is None:
            groups.append([j])
            unions.append(t)
        else:
            groups[target].append(j)
            unions[target] |= t
    return Pagination(groups)


def first_fit(instance: Instance, order: Sequence[int] | None = None) -> Pagination:
    return any_fit(instance, order, AnyFitStrategy.FIRST)


def best_fusion(
    instance: Instance, order: Sequence[int] | None = None, decant_result: bool = True
) -> Pagination:
    """Put each tile on the eligible page where its relative size is minimal,
    provided that size is strictly below the tile's own size."""
    instance.check_feasible()
    order = _check_order(instance, order)
    tiles, cap, syms = instance.tiles, instance.capacity, instance.symbols
    recip = [0.0] + [1.0 / m for m in range(1, instance.n_tiles + 1)]
    groups: list[list[int]] = []
    unions: list[int] = []
    counts: list[dict[int, int]] = []
    for j in order:
        t = tiles[j]
        size = len(syms[j])
        best_k, best_f = None, size - EPS
        for k, u in enumerate(unions):
            if not u & t or (u | t).bit_count() > cap:
                continue
            c = counts[k]
            f = sum(recip[c.get(a, 0) + 1] for a in syms[j])
            if f < best_f:
                best_k, best_f = k, f - EPS
        if best_k is None:
            groups.append([j])
            unions.append(t)
            counts.append(dict.fromkeys(syms[j], 1))
        else:
            groups[best_k].append(j)
            unions[best_k] |= t
            c = counts[best_k]
            for a in syms[j]:
                c[a] = c.get(a, 0) + 1
    result = Pagination(groups)
    return decant(instance, result) if decant_result else result


def _settle(instance: Instance, pages: list[list[list[int]]]) -> list[list[int]]:
    """First Fit over items grouped by page.

    ``pages[k]`` lists the items (tile lists) currently on page ``k``.  Each
    item moves to the lowest-index earlier page that can take it, otherwise
    it stays on its own page.
    """
    tiles, cap = instance.tiles, instance.capacity
    out: list[list[int]] = []
    unions: list[int] = []
    for items in pages:
        here: list[int] = []
        here_union = 0
        for item in items:
            mask = 0
            for j in item:
                mask |= tiles[j]
            for k, u in enumerate(unions):
                m = u | mask
                if m.bit_count() <= cap:
                    out[k].extend(item)
                    unions[k] = m
                    break
            else:
                here.extend(item)
                here_union |= mask
        if here:
            out.append(here)
            unions.append(here_union)
    return out


def decant_pages(instance: Instance, pagination: Pagination) -> Pagination:
    return Pagination(_settle(instance, [[list(p)] for p in pagination]))


def decant_components(instance: Instance, pagination: Pagination) -> Pagination:
    return Pagination(
        _settle(instance, [connected_components(instance, p) for p in pagination])
    )


def decant_tiles(instance: Instance, pagination: Pagination) -> Pagination:
    return Pagination(_settle(instance, [[[j] for j in p] for p in pagination]))


def decant(instance: Instance, pagination: Pagination) -> Pagination:
    """Settle whole pages, then connected components, then single tiles
    towards the front of the pagination."""
    check = is_valid(instance, pagination)
    if not check:
        raise PaginationError(f"cannot decant an invalid pagination: {check.reason}")
    p = decant_pages(instance, pagination)
    p = decant_components(instance, p)
    return decant_tiles(instance, p)

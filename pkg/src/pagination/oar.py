"""Overload-and-Remove: a queue-based heuristic that lets pages overflow
and then evicts the tiles that profit least from sharing."""

from __future__ import annotations

import logging
from collections import deque
from typing import Sequence

from .core import EPS, Instance, Pagination
from .greedy import _check_order, decant, first_fit_insert

log = logging.getLogger(__name__)


class _Page:
    __slots__ = ("pid", "tiles", "counts", "union")

    def __init__(self, pid: int):
        self.pid = pid
        self.tiles: list[int] = []
        self.counts: dict[int, int] = {}
        self.union = 0

    def add(self, j: int, mask: int, syms) -> None:
        self.tiles.append(j)
        self.union |= mask
        c = self.counts
        for a in syms:
            c[a] = c.get(a, 0) + 1

    def remove(self, j: int, syms, tiles) -> None:
        self.tiles.remove(j)
        c = self.counts
        for a in syms:
            c[a] -= 1
            if not c[a]:
                del c[a]
        u = 0
        for i in self.tiles:
            u |= tiles[i]
        self.union = u


def overload_and_remove(
    instance: Instance,
    order: Sequence[int] | None = None,
    decant_result: bool = True,
    max_steps: int | None = None,
) -> Pagination:
    """Run Overload-and-Remove with the queue initialised from ``order``.

    A tile is never put back on a page it has already been on.  Pages still
    overloaded when the queue runs dry are dissolved and their tiles
    redistributed by First Fit.  ``max_steps`` caps the number of dequeues
    (default ``|T|**3``); when reached, queued tiles go through the same
    First Fit redistribution.
    """
    instance.check_feasible()
    order = _check_order(instance, order)
    tiles, cap, syms = instance.tiles, instance.capacity, instance.symbols
    n = instance.n_tiles
    recip = [0.0] + [1.0 / m for m in range(1, n + 1)]
    if max_steps is None:
        max_steps = max(n, 2) ** 3

    queue = deque(order)
    pages: list[_Page] = []
    visited: list[set[int]] = [set() for _ in range(n)]
    steps = 0

    def rel(page: _Page, j: int) -> float:
        c = page.counts
        return sum(recip[c[a]] for a in syms[j])

    while queue:
        steps += 1
        if steps > max_steps:
            log.warning("overload-and-remove stopped after %d steps", max_steps)
            break
        j = queue.popleft()
        t = tiles[j]
        size = len(syms[j])
        seen = visited[j]
        best, best_f = None, size - EPS
        for page in pages:
            if page.pid in seen or not page.union & t:
                continue
            c = page.counts
            f = sum(recip[c.get(a, 0) + 1] for a in syms[j])
            if f < best_f:
                best, best_f = page, f - EPS
        if best is None:
            page = _Page(len(pages))
            page.add(j, t, syms[j])
            pages.append(page)
            seen.add(page.pid)
            continue
        assert best.pid not in seen
        best.add(j, t, syms[j])
        seen.add(best.pid)
        while best.union.bit_count() > cap:
            ratios = [(len(syms[i]) / rel(best, i), i) for i in best.tiles]
            lo = min(r for r, _ in ratios)
            hi = max(r for r, _ in ratios)
            if hi - lo <= EPS:
                break
            evicted = min(i for r, i in ratios if r <= lo + EPS)
            best.remove(evicted, syms[evicted], tiles)
            queue.append(evicted)

    kept: list[list[int]] = []
    unions: list[int] = []
    homeless: list[int] = []
    for page in pages:
        if not page.tiles:
            continue
        if page.union.bit_count() > cap:
            homeless.extend(sorted(page.tiles))
        else:
            kept.append(page.tiles)
            unions.append(page.union)
    homeless.extend(queue)
    first_fit_insert(instance, kept, unions, homeless)
    result = Pagination(kept)
    return decant(instance, result) if decant_result else result

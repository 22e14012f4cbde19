"""Exhaustive search on small instances and export of the 0-1 model.

The oracle enumerates set partitions of the tiles in canonical form
(restricted growth: tile ``k`` may only open page ``max + 1``) and prunes
overloaded pages and branches that cannot beat the incumbent.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .core import Instance, Pagination, is_valid

MAX_TILES = 12
MAX_NODES = 10_000_000
TIME_LIMIT = 60.0


class OracleLimitError(RuntimeError):
    """The instance is larger than the oracle accepts without an override."""


@dataclass
class OracleResult:
    optimal_page_count: int
    pagination: Pagination
    nodes: int
    proven: bool

    def sidecar(self) -> str:
        return f"# proven {'true' if self.proven else 'false'} nodes {self.nodes}"


def _heuristic_incumbent(instance: Instance) -> Pagination:
    from .greedy import best_fusion, first_fit
    from .oar import overload_and_remove

    candidates = [
        first_fit(instance),
        best_fusion(instance),
        overload_and_remove(instance),
    ]
    return min(candidates, key=len)


def brute_force_optimal(
    instance: Instance,
    max_tiles: int = MAX_TILES,
    max_nodes: int = MAX_NODES,
    time_limit: float = TIME_LIMIT,
    incumbent: Pagination | None = None,
    allow_large: bool = False,
) -> OracleResult:
    """Minimum page count by depth-first search over canonical set partitions.

    Raises :class:`OracleLimitError` when the instance has more than
    ``max_tiles`` tiles and ``allow_large`` is false.  Hitting the node or
    time limit returns the incumbent with ``proven=False``.
    """
    instance.check_feasible()
    n = instance.n_tiles
    if n > max_tiles and not allow_large:
        raise OracleLimitError(f"{n} tiles exceed the oracle cap of {max_tiles}")
    if incumbent is None:
        incumbent = _heuristic_incumbent(instance)
    best_pages = [list(p) for p in incumbent]
    best = len(best_pages)

    tiles, cap = instance.tiles, instance.capacity
    # large tiles first: capacity prunes earlier
    order = sorted(range(n), key=lambda j: (-tiles[j].bit_count(), j))
    total = 0
    for t in tiles:
        total |= t
    lower = max(1, math.ceil(total.bit_count() / cap))

    groups: list[list[int]] = []
    unions: list[int] = []
    nodes = 0
    deadline = time.monotonic() + time_limit
    aborted = False

    def dfs(k: int) -> None:
        nonlocal best, best_pages, nodes, aborted
        if aborted or best <= lower:
            return
        nodes += 1
        if nodes > max_nodes or (nodes & 0x3FF == 0 and time.monotonic() > deadline):
            aborted = True
            return
        if k == n:
            if len(groups) < best:
                best = len(groups)
                best_pages = [list(g) for g in groups]
            return
        j = order[k]
        t = tiles[j]
        for g in range(len(groups)):
            m = unions[g] | t
            if m.bit_count() <= cap:
                old = unions[g]
                unions[g] = m
                groups[g].append(j)
                dfs(k + 1)
                groups[g].pop()
                unions[g] = old
        if len(groups) + 1 < best:
            groups.append([j])
            unions.append(t)
            dfs(k + 1)
            groups.pop()
            unions.pop()

    dfs(0)
    result = Pagination(best_pages)
    assert is_valid(instance, result)
    return OracleResult(len(result), result, nodes, not aborted)


@dataclass
class GapReport:
    pages: int
    optimum: int | None
    lower_bound: int
    proven: bool

    @property
    def gap(self) -> int | None:
        return None if self.optimum is None else self.pages - self.optimum

    def __str__(self) -> str:
        if self.optimum is None:
            return f"pages {self.pages}, gap unknown (lower bound {self.lower_bound})"
        return f"pages {self.pages}, optimum {self.optimum}, gap {self.gap}"


def volume_lower_bound(instance: Instance) -> int:
    total = 0
    for t in instance.tiles:
        total |= t
    return max(1, math.ceil(total.bit_count() / instance.capacity))


def verify_optimality_gap(
    instance: Instance, pagination: Pagination, run_oracle: bool = True, **limits
) -> GapReport:
    """Compare a pagination with the proven optimum when the oracle can get one."""
    lb = volume_lower_bound(instance)
    if run_oracle and instance.n_tiles <= limits.get("max_tiles", MAX_TILES):
        res = brute_force_optimal(instance, **limits)
        if res.proven:
            return GapReport(len(pagination), res.optimal_page_count, lb, True)
    return GapReport(len(pagination), None, lb, False)


# -- LP export --------------------------------------------------------------

def _wrap(head: str, terms: list[str], tail: str, width: int = 200) -> list[str]:
    lines, cur = [], head
    for i, term in enumerate(terms):
        piece = term if i == 0 else ("- " + term[1:] if term.startswith("-") else "+ " + term)
        if len(cur) + len(piece) + 1 > width:
            lines.append(cur)
            cur = "   "
        cur += " " + piece
    lines.append((cur + " " + tail).rstrip())
    return lines


def export_lp(instance: Instance, pages: int | None = None) -> str:
    """The 0-1 model in LP text format over a horizon of ``pages`` pages.

    Variables: ``y_i_k`` symbol i on page k, ``x_j_k`` tile j on page k,
    ``p_k`` page k used.  Rows are named ``e<eq>_...`` after the constraint
    family and their indices.  Defaults to the best heuristic page count.
    """
    if pages is None:
        pages = len(_heuristic_incumbent(instance))
    if pages < 1:
        raise ValueError("page horizon must be at least 1")
    S, T, K = instance.n_symbols, instance.n_tiles, range(pages)
    cap = instance.capacity
    out = [
        f"\\ pagination model: {T} tiles, {S} symbols, capacity {cap}, {pages} pages",
        "Minimize",
    ]
    out += _wrap(" obj:", [f"p_{k}" for k in K], "")
    out.append("Subject To")
    for j in range(T):
        out += _wrap(f" e1_j{j}:", [f"x_{j}_{k}" for k in K], "= 1")
    for k in K:
        for i in range(S):
            out.append(f" e2_i{i}_k{k}: p_{k} - y_{i}_{k} >= 0")
    for k in K:
        out += _wrap(f" e3_k{k}:", [f"y_{i}_{k}" for i in range(S)] + [f"-{cap} p_{k}"], "<= 0")
    for k in K:
        for j in range(T):
            for i in instance.symbols[j]:
                out.append(f" e4_i{i}_j{j}_k{k}: y_{i}_{k} - x_{j}_{k} >= 0")
    out.append("Binary")
    names = [f"y_{i}_{k}" for i in range(S) for k in K]
    names += [f"x_{j}_{k}" for j in range(T) for k in K]
    names += [f"p_{k}" for k in K]
    for s in range(0, len(names), 10):
        out.append(" " + " ".join(names[s:s + 10]))
    out.append("End")
    return "\n".join(out) + "\n"

"""Simplifying rules 1-9: detection with witnesses, and reduction to a fixpoint."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import InfeasibleError, Instance, Pagination, bits

RULES = {
    1: "no tile is included in another one",
    2: "no tile contains all the symbols",
    3: "each tile has less than C symbols",
    4: "no symbol is shared by all tiles",
    5: "each symbol belongs to at least one tile",
    6: "each tile is compatible with at least another one",
    7: "C > 2",
    8: "C < |S|",
    9: "all tiles contain more than one symbol",
}


@dataclass(frozen=True)
class RuleStatus:
    rule: int
    ok: bool
    witness: tuple = ()
    detail: str = ""


@dataclass
class RuleReport:
    statuses: dict[int, RuleStatus]

    def __getitem__(self, rule: int) -> RuleStatus:
        return self.statuses[rule]

    def violated(self) -> list[int]:
        return [r for r, s in sorted(self.statuses.items()) if not s.ok]

    def satisfied(self, rules=RULES) -> bool:
        return all(self.statuses[r].ok for r in rules)

    def format(self) -> str:
        lines = []
        for r, s in sorted(self.statuses.items()):
            state = "ok" if s.ok else f"VIOLATED ({s.detail})"
            lines.append(f"rule {r}: {RULES[r]}: {state}")
        return "\n".join(lines)


def _inclusion(tiles) -> tuple[int, int] | None:
    """First pair (i, j), i != j, with tile i a subset of tile j."""
    n = len(tiles)
    for i in range(n):
        a = tiles[i]
        for j in range(n):
            if i != j and a & tiles[j] == a:
                return i, j
    return None


def _lonely_tile(tiles, cap) -> int | None:
    for i, a in enumerate(tiles):
        if not any(j != i and (a | b).bit_count() <= cap for j, b in enumerate(tiles)):
            return i
    return None


def check_rules(instance: Instance) -> RuleReport:
    tiles, cap = instance.tiles, instance.capacity
    sizes, toks = instance.sizes, instance.tokens
    st: dict[int, RuleStatus] = {}

    pair = _inclusion(tiles)
    st[1] = RuleStatus(1, pair is None, pair or (),
                       f"tile {pair[0]} is included in tile {pair[1]}" if pair else "")

    full = next((i for i, t in enumerate(tiles) if t == instance.alphabet_mask), None)
    st[2] = RuleStatus(2, full is None, (full,) if full is not None else (),
                       f"tile {full} holds every symbol" if full is not None else "")

    big = next((i for i, s in enumerate(sizes) if s >= cap), None)
    st[3] = RuleStatus(3, big is None, (big,) if big is not None else (),
                       f"tile {big} has {sizes[big]} symbols" if big is not None else "")

    common = instance.alphabet_mask
    for t in tiles:
        common &= t
    shared = bits(common)
    st[4] = RuleStatus(4, not shared, (shared[0],) if shared else (),
                       f"symbol {toks[shared[0]]!r} is in every tile" if shared else "")

    used = 0
    for t in tiles:
        used |= t
    unused = bits(instance.alphabet_mask & ~used)
    st[5] = RuleStatus(5, not unused, (unused[0],) if unused else (),
                       f"symbol {toks[unused[0]]!r} is in no tile" if unused else "")

    lonely = _lonely_tile(tiles, cap)
    st[6] = RuleStatus(6, lonely is None, (lonely,) if lonely is not None else (),
                       f"tile {lonely} fits with no other tile" if lonely is not None else "")

    st[7] = RuleStatus(7, cap > 2, () if cap > 2 else (cap,),
                       "" if cap > 2 else f"capacity is {cap}")
    ns = instance.n_symbols
    st[8] = RuleStatus(8, cap < ns, () if cap < ns else (cap, ns),
                       "" if cap < ns else f"capacity {cap} >= {ns} symbols")

    tiny = next((i for i, s in enumerate(sizes) if s <= 1), None)
    st[9] = RuleStatus(9, tiny is None, (tiny,) if tiny is not None else (),
                       f"tile {tiny} has a single symbol" if tiny is not None else "")
    return RuleReport(st)


@dataclass
class ReductionLog:
    """How to turn a pagination of the reduced instance into one of the original.

    ``kept[k]`` is the original index of reduced tile ``k``.  ``steps`` are
    replayed backwards by :meth:`lift`:

    * ``("subsumed", j, host)``: tile ``j`` goes on the page of ``host``;
    * ``("dedicated", j)``: tile ``j`` gets a page of its own;
    * ``("strip", token)``: a universal symbol was removed, nothing to do;
    * ``("loose", j)``: a single-symbol tile emptied by a strip, put anywhere.
    """

    original_tiles: int
    kept: tuple[int, ...] = ()
    steps: list[tuple] = field(default_factory=list)
    capacity_drop: int = 0

    def lift(self, pagination: Pagination) -> Pagination:
        pages = [[self.kept[j] for j in p] for p in pagination]
        where = {j: k for k, p in enumerate(pages) for j in p}
        for step in reversed(self.steps):
            kind = step[0]
            if kind == "subsumed":
                _, j, host = step
                k = where[host]
                pages[k].append(j)
                where[j] = k
            elif kind == "dedicated":
                where[step[1]] = len(pages)
                pages.append([step[1]])
            elif kind == "loose":
                if not pages:
                    pages.append([])
                pages[0].append(step[1])
                where[step[1]] = 0
        return Pagination(pages)


def reduce(instance: Instance) -> tuple[Instance, ReductionLog]:
    """Apply rules 1, 3, 4, 5 and 6 until none of them fires.

    Raises :class:`InfeasibleError` when a tile exceeds the capacity.  The
    reduced instance always keeps at least one tile.
    """
    instance.check_feasible()
    log = ReductionLog(instance.n_tiles)
    cap = instance.capacity
    live = list(range(instance.n_tiles))
    mask = dict(enumerate(instance.tiles))
    stripped = 0

    changed = True
    while changed:
        changed = False
        # rule 1: drop tiles included in another (keep the first of duplicates)
        for j in list(live):
            if len(live) < 2:
                break
            a = mask[j]
            host = next((h for h in live if h != j and a & mask[h] == a), None)
            if host is not None:
                live.remove(j)
                log.steps.append(("subsumed", j, host))
                changed = True
        # rules 3 and 6: tiles that must sit alone
        for j in list(live):
            if len(live) < 2:
                break
            a = mask[j]
            if a.bit_count() == cap or not any(
                h != j and (a | mask[h]).bit_count() <= cap for h in live
            ):
                live.remove(j)
                log.steps.append(("dedicated", j))
                changed = True
        # rule 4: strip a symbol present in every tile
        if len(live) >= 2:
            common = -1
            for j in live:
                common &= mask[j]
            if common:
                a = bits(common)[0]
                bit = 1 << a
                log.steps.append(("strip", instance.tokens[a]))
                stripped |= bit
                cap -= 1
                log.capacity_drop += 1
                for j in list(live):
                    mask[j] &= ~bit
                    if not mask[j]:
                        live.remove(j)
                        log.steps.append(("loose", j))
                changed = True

    used = 0
    for j in live:
        used |= mask[j]
    symbols = bits(used)
    remap = {a: k for k, a in enumerate(symbols)}
    tiles = []
    for j in live:
        tiles.append(sum(1 << remap[a] for a in bits(mask[j])))
    log.kept = tuple(live)
    reduced = Instance(cap, tuple(instance.tokens[a] for a in symbols), tuple(tiles))
    return reduced, log

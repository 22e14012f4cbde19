"""Instances, paginations and the symbol-counting metrics.

Tiles are stored as Python ints used as bitsets over a dense alphabet:
bit ``i`` is set when symbol ``i`` belongs to the tile.  Pages and
paginations only ever refer to tiles by their index in ``Instance.tiles``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Union

EPS = 1e-9


class PaginationError(ValueError):
    """Malformed instance, page or pagination."""


class InfeasibleError(PaginationError):
    """Some tile has more symbols than the capacity allows."""


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Instance:
    capacity: int
    tokens: tuple[str, ...]
    tiles: tuple[int, ...]

    def __post_init__(self):
        if self.capacity <= 0:
            raise PaginationError(f"capacity must be positive, got {self.capacity}")
        if not self.tiles:
            raise PaginationError("an instance needs at least one tile")
        if len(set(self.tokens)) != len(self.tokens):
            raise PaginationError("symbol tokens must be unique")
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise PaginationError(f"bad symbol token {tok!r}")
        limit = 1 << len(self.tokens)
        for i, t in enumerate(self.tiles):
            if t <= 0:
                raise PaginationError(f"tile {i} is empty")
            if t >= limit:
                raise PaginationError(f"tile {i} uses a symbol outside the alphabet")

    @classmethod
    def from_sets(cls, tiles: Iterable[Iterable[str]], capacity: int) -> "Instance":
        """Build an instance from token collections; the alphabet follows first appearance."""
        index: dict[str, int] = {}
        masks = []
        for tile in tiles:
            mask = 0
            for tok in tile:
                mask |= 1 << index.setdefault(tok, len(index))
            masks.append(mask)
        return cls(capacity, tuple(index), tuple(masks))

    @classmethod
    def from_words(cls, words: str | Iterable[str], capacity: int) -> "Instance":
        """Shorthand where every character of a word is a symbol: ``"abcde def"``."""
        if isinstance(words, str):
            words = words.split()
        return cls.from_sets((list(w) for w in words), capacity)

    @property
    def n_tiles(self) -> int:
        return len(self.tiles)

    @property
    def n_symbols(self) -> int:
        return len(self.tokens)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(t.bit_count() for t in self.tiles)

    @cached_property
    def symbols(self) -> tuple[tuple[int, ...], ...]:
        """Symbol ids of every tile."""
        return tuple(tuple(bits(t)) for t in self.tiles)

    @cached_property
    def alphabet_mask(self) -> int:
        return (1 << len(self.tokens)) - 1

    def symbol(self, token: str) -> int:
        try:
            return self.tokens.index(token)
        except ValueError:
            raise PaginationError(f"unknown symbol {token!r}") from None

    def tile_tokens(self, i: int) -> list[str]:
        return [self.tokens[a] for a in self.symbols[i]]

    def check_feasible(self) -> None:
        for i, size in enumerate(self.sizes):
            if size > self.capacity:
                raise InfeasibleError(
                    f"tile {i} has {size} symbols, more than capacity {self.capacity}"
                )


@dataclass(frozen=True)
class Pagination:
    """Ordered pages, each a sorted tuple of tile indices; empty pages are dropped."""

    pages: tuple[tuple[int, ...], ...]

    def __init__(self, pages: Iterable[Iterable[int]] = ()):
        norm = tuple(tuple(sorted(p)) for p in (list(p) for p in pages) if p)
        object.__setattr__(self, "pages", norm)

    def __len__(self) -> int:
        return len(self.pages)

    def __iter__(self):
        return iter(self.pages)

    def __getitem__(self, k):
        return self.pages[k]

    def tiles(self) -> list[int]:
        return [j for p in self.pages for j in p]

    def canonical(self) -> frozenset[frozenset[int]]:
        """The pagination as an unordered partition."""
        return frozenset(frozenset(p) for p in self.pages)


Tiles = Union[Iterable[int], Pagination, Instance]


def _tile_indices(instance: Instance, tiles: Tiles) -> list[int]:
    if isinstance(tiles, Instance):
        return list(range(tiles.n_tiles))
    if isinstance(tiles, Pagination):
        idx = tiles.tiles()
    else:
        idx = list(tiles)
    n = instance.n_tiles
    for j in idx:
        if not 0 <= j < n:
            raise PaginationError(f"tile index {j} out of range 0..{n - 1}")
    return idx


def union(instance: Instance, page: Iterable[int]) -> int:
    """Bitset of the distinct symbols present on ``page``."""
    mask = 0
    tiles = instance.tiles
    for j in _tile_indices(instance, page):
        mask |= tiles[j]
    return mask


def tile_size(tile: int) -> int:
    """Number of symbols of a tile given as a bitset."""
    return tile.bit_count()


def volume(instance: Instance, page: Iterable[int]) -> int:
    """Number of distinct symbols on a page."""
    return union(instance, page).bit_count()


def loss(instance: Instance, page: Iterable[int]) -> int:
    """Unused room on a page.  Negative when the page is overloaded."""
    return instance.capacity - volume(instance, page)


def total_loss(instance: Instance, pagination: Pagination) -> int:
    return sum(loss(instance, p) for p in pagination)


def cardinality(instance: Instance, tiles: Tiles) -> int:
    """Symbol count with repetition over a page, a pagination or a whole instance."""
    sizes = instance.sizes
    return sum(sizes[j] for j in _tile_indices(instance, tiles))


def multiplicity(instance: Instance, tiles: Tiles, symbol: int) -> int:
    """Number of tiles of the context containing ``symbol``."""
    bit = 1 << symbol
    return sum(1 for j in _tile_indices(instance, tiles) if instance.tiles[j] & bit)


def relative_size(instance: Instance, tiles: Tiles, tile: int) -> float:
    """Sum over the symbols of ``tile`` of the reciprocal of their multiplicity.

    When ``tile`` is not part of the context it is counted as if it were
    added to it, so a candidate sharing nothing with a page gets its full
    size.
    """
    context = _tile_indices(instance, tiles)
    if tile not in context:
        context.append(tile)
    masks = [instance.tiles[j] for j in context]
    total = 0.0
    for a in instance.symbols[tile]:
        bit = 1 << a
        total += 1.0 / sum(1 for m in masks if m & bit)
    return total


class Validity(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_valid(instance: Instance, pagination: Pagination) -> Validity:
    """Check that pages partition the tiles and that no page exceeds capacity."""
    seen: set[int] = set()
    for k, page in enumerate(pagination.pages):
        if not page:
            return Validity(False, f"page {k} is empty")
        for j in page:
            if not 0 <= j < instance.n_tiles:
                return Validity(False, f"page {k} refers to unknown tile {j}")
            if j in seen:
                return Validity(False, f"tile {j} appears on more than one page")
            seen.add(j)
    if len(seen) != instance.n_tiles:
        missing = min(set(range(instance.n_tiles)) - seen)
        return Validity(False, f"tile {missing} is not on any page")
    for k, page in enumerate(pagination.pages):
        v = volume(instance, page)
        if v > instance.capacity:
            return Validity(
                False, f"page {k} holds {v} symbols, capacity is {instance.capacity}"
            )
    return Validity(True)


def connected_components(instance: Instance, tiles: Iterable[int] | None = None) -> list[list[int]]:
    """Classes of tiles linked by chains of shared symbols.

    Restricted to ``tiles`` when given.  Classes are sorted internally and
    ordered by their smallest tile index.
    """
    idx = sorted(range(instance.n_tiles) if tiles is None else tiles)
    parent = {j: j for j in idx}

    def find(j):
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    owner: dict[int, int] = {}
    for j in idx:
        for a in instance.symbols[j]:
            if a in owner:
                ra, rb = find(owner[a]), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                owner[a] = j
    classes: dict[int, list[int]] = {}
    for j in idx:
        classes.setdefault(find(j), []).append(j)
    return sorted(classes.values(), key=lambda c: c[0])


"""Standard and grouping genetic algorithms.

Standard chromosomes are lists of 1-based page numbers, one gene per tile,
and may encode invalid paginations.  Grouping chromosomes are lists of
groups (lists of tile indices) and are always valid.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from typing import Sequence

from .core import Instance, Pagination
from .greedy import decant, first_fit_insert


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 80
    generations: int = 50
    crossover_rate: float = 0.90
    mutation_rate: float = 0.01
    disparity: float = 2.0
    elitism_count: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        if not 0 <= self.crossover_rate <= 1 or not 0 <= self.mutation_rate <= 1:
            raise ValueError("rates must lie in [0, 1]")
        if self.population_size < 2:
            raise ValueError("population needs at least two individuals")
        if self.disparity < 1:
            raise ValueError("disparity must be at least 1")
        if not 0 <= self.elitism_count <= self.population_size:
            raise ValueError("elitism count out of range")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")


# -- standard model ---------------------------------------------------------

def standard_fitness(instance: Instance, genes: Sequence[int]) -> int:
    """Cost to minimize; any overloaded page costs more than every valid encoding."""
    tiles, cap = instance.tiles, instance.capacity
    unions: dict[int, int] = {}
    for j, g in enumerate(genes):
        unions[g] = unions.get(g, 0) | tiles[j]
    excess = 0
    for u in unions.values():
        v = u.bit_count()
        if v > cap:
            excess += v - cap
    if excess:
        return instance.n_tiles * cap + excess
    last = max(unions)
    return (last - 1) * cap + unions[last].bit_count()


def encode_standard(pagination: Pagination, n_tiles: int) -> list[int]:
    genes = [0] * n_tiles
    for k, page in enumerate(pagination, start=1):
        for j in page:
            genes[j] = k
    return genes


def decode_standard(genes: Sequence[int]) -> Pagination:
    pages: dict[int, list[int]] = {}
    for j, g in enumerate(genes):
        pages.setdefault(g, []).append(j)
    return Pagination(pages[k] for k in sorted(pages))


def standard_mutate(
    genes: Sequence[int],
    rng: random.Random,
    max_page: int,
    position: int | None = None,
    target: int | None = None,
) -> list[int]:
    """Move one tile to another page number in ``1..max_page``."""
    out = list(genes)
    if position is None:
        position = rng.randrange(len(out))
    if target is None:
        if max_page < 2:
            return out
        target = rng.randint(1, max_page - 1)
        if target >= out[position]:
            target += 1
    out[position] = target
    return out


def standard_crossover(
    a: Sequence[int],
    b: Sequence[int],
    rng: random.Random,
    cuts: tuple[int, int] | None = None,
) -> tuple[list[int], list[int]]:
    """Two-point crossover: swap the genes between the cut points."""
    if cuts is None:
        cuts = tuple(sorted((rng.randint(0, len(a)), rng.randint(0, len(a)))))
    i, j = cuts
    return (list(a[:i]) + list(b[i:j]) + list(a[j:]),
            list(b[:i]) + list(a[i:j]) + list(b[j:]))


# -- grouping model ---------------------------------------------------------

def m_cap(instance: Instance) -> int:
    """Sum of the multiplicities of the ``C`` most common symbols."""
    counts = [0] * instance.n_symbols
    for syms in instance.symbols:
        for a in syms:
            counts[a] += 1
    counts.sort(reverse=True)
    return sum(counts[: instance.capacity])


def grouping_fitness(
    instance: Instance,
    groups: Sequence[Sequence[int]],
    d: float = 2.0,
    normalizer: int | None = None,
) -> float:
    """Mean over pages of (page cardinality / M_C)^d; larger is better."""
    if normalizer is None:
        normalizer = m_cap(instance)
    sizes = instance.sizes
    total = 0.0
    for g in groups:
        total += (sum(sizes[j] for j in g) / normalizer) ** d
    return total / len(groups)


def _unions(instance: Instance, groups) -> list[int]:
    tiles = instance.tiles
    out = []
    for g in groups:
        u = 0
        for j in g:
            u |= tiles[j]
        out.append(u)
    return out


def grouping_mutate(
    instance: Instance,
    groups: Sequence[Sequence[int]],
    rng: random.Random,
    victims: Sequence[int] | None = None,
) -> list[list[int]]:
    """Empty one to three random pages and put their tiles back by First Fit."""
    p = len(groups)
    if victims is None:
        victims = rng.sample(range(p), rng.randint(1, min(3, p)))
    victims = set(victims)
    freed = [j for k in sorted(victims) for j in groups[k]]
    rng.shuffle(freed)
    kept = [list(g) for k, g in enumerate(groups) if k not in victims]
    first_fit_insert(instance, kept, _unions(instance, kept), freed)
    return kept


def _inject(instance, host, cut, segment):
    i, j = cut
    taken = {t for g in segment for t in g}
    out = []
    for g in host[:i]:
        g2 = [t for t in g if t not in taken]
        if g2:
            out.append(g2)
    out.extend(list(g) for g in segment)
    for g in host[j:]:
        g2 = [t for t in g if t not in taken]
        if g2:
            out.append(g2)
    sizes = instance.sizes
    missing = [t for g in host[i:j] for t in g if t not in taken]
    missing.sort(key=lambda t: (-sizes[t], t))
    first_fit_insert(instance, out, _unions(instance, out), missing)
    return out


def grouping_crossover(
    instance: Instance,
    a: Sequence[Sequence[int]],
    b: Sequence[Sequence[int]],
    rng: random.Random,
    cuts: tuple[tuple[int, int], tuple[int, int]] | None = None,
) -> tuple[list[list[int]], list[list[int]]]:
    """Insert the middle groups of each parent into the other one.

    Tiles of the injected groups are withdrawn from the receiving parent's
    outer segments; tiles left out are put back by First Fit, largest first.
    """
    if cuts is None:
        cuts = (
            tuple(sorted((rng.randint(0, len(a)), rng.randint(0, len(a))))),
            tuple(sorted((rng.randint(0, len(b)), rng.randint(0, len(b))))),
        )
    (i1, j1), (i2, j2) = cuts
    child1 = _inject(instance, a, (i1, j1), b[i2:j2])
    child2 = _inject(instance, b, (i2, j2), a[i1:j1])
    return child1, child2


# -- evolution loop ---------------------------------------------------------

@dataclass
class GaResult:
    pagination: Pagination
    best_fitness: float
    history: list[tuple[int, float, float]] = field(default_factory=list)

    def write_history(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["generation", "best_fitness", "mean_fitness"])
            w.writerows(self.history)


def _seed_population(instance: Instance, size: int, rng: random.Random) -> list[list[list[int]]]:
    n = instance.n_tiles
    pop = []
    for _ in range(size):
        groups: list[list[int]] = []
        first_fit_insert(instance, groups, [], rng.sample(range(n), n))
        pop.append(groups)
    return pop


def run_ga(
    instance: Instance,
    model: str = "grouping",
    config: GaConfig = GaConfig(),
    decant_result: bool = True,
) -> GaResult:
    """Evolve a population seeded by First Fit on random tile orders.

    Binary tournament selection, crossover with probability
    ``crossover_rate``, one mutation per offspring with probability
    ``mutation_rate``, and the ``elitism_count`` best individuals copied
    into each new generation.  Returns the best individual ever seen.
    """
    if model not in ("standard", "grouping"):
        raise ValueError(f"unknown GA model {model!r}")
    instance.check_feasible()
    rng = random.Random(config.rng_seed)
    n = instance.n_tiles
    seeds = _seed_population(instance, config.population_size, rng)

    if model == "standard":
        pop = [encode_standard(Pagination(g), n) for g in seeds]

        def fit(c):
            return -standard_fitness(instance, c)

        def cross(x, y):
            return standard_crossover(x, y, rng)

        def mutate(c):
            return standard_mutate(c, rng, n)
    else:
        pop = seeds
        norm = m_cap(instance)
        d = config.disparity

        def fit(c):
            return grouping_fitness(instance, c, d, norm)

        def cross(x, y):
            return grouping_crossover(instance, x, y, rng)

        def mutate(c):
            return grouping_mutate(instance, c, rng)

    # internally every score is maximised; the standard cost is negated
    scores = [fit(c) for c in pop]
    sign = -1 if model == "standard" else 1
    best_i = max(range(len(pop)), key=scores.__getitem__)
    best, best_score = pop[best_i], scores[best_i]
    history = [(0, sign * best_score, sign * sum(scores) / len(scores))]

    size = config.population_size
    for gen in range(1, config.generations + 1):
        ranked = sorted(range(size), key=scores.__getitem__, reverse=True)
        nxt = [pop[k] for k in ranked[: config.elitism_count]]
        nscores = [scores[k] for k in ranked[: config.elitism_count]]

        def pick():
            x, y = rng.randrange(size), rng.randrange(size)
            return pop[x] if scores[x] >= scores[y] else pop[y]

        while len(nxt) < size:
            p1, p2 = pick(), pick()
            if rng.random() < config.crossover_rate:
                kids = cross(p1, p2)
            else:
                kids = (p1, p2)
            for kid in kids:
                if len(nxt) == size:
                    break
                if rng.random() < config.mutation_rate:
                    kid = mutate(kid)
                nxt.append(kid)
                nscores.append(fit(kid))
        pop, scores = nxt, nscores
        gi = max(range(size), key=scores.__getitem__)
        if scores[gi] > best_score:
            best, best_score = pop[gi], scores[gi]
        history.append((gen, sign * max(scores), sign * sum(scores) / size))

    result = decode_standard(best) if model == "standard" else Pagination(best)
    if decant_result:
        result = decant(instance, result)
    return GaResult(result, sign * best_score, history)

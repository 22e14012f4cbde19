"""Random instance generator and the full parameter sweep.

Randomness comes from Python's ``random.Random`` (Mersenne Twister,
MT19937) seeded with a 64-bit integer, so instances are reproducible from
``(config, seed)`` within this package.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterator

from ..core import Instance
from .rules import _lonely_tile

RNG_ALGORITHM = "mt19937"


class GenerationError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class GeneratorConfig:
    capacity: int
    symbol_count: int
    tile_count: int
    rng_seed: int = 0
    max_tile_attempts: int = 10_000
    max_restarts: int = 100

    def __post_init__(self):
        if self.capacity <= 2:
            raise ValueError("capacity must exceed 2")
        if self.capacity >= self.symbol_count:
            raise ValueError("capacity must be smaller than the number of symbols")
        if self.tile_count < 2:
            raise ValueError("at least two tiles are needed")


def _draw(cfg: GeneratorConfig, rng: random.Random) -> list[int]:
    cap, pool = cfg.capacity, range(cfg.symbol_count)
    mean = rng.choice((1, 2, 3)) * cap / 4
    sd = cap / 5
    accepted: list[int] = []
    while len(accepted) < cfg.tile_count:
        for _ in range(cfg.max_tile_attempts):
            k = round(rng.gauss(mean, sd))
            if not 1 < k < cap:
                continue
            cand = 0
            for a in rng.sample(pool, k):
                cand |= 1 << a
            if any(cand & t == cand or cand & t == t for t in accepted):
                continue
            accepted.append(cand)
            break
        else:
            raise GenerationError(
                "tile", f"no admissible tile after {cfg.max_tile_attempts} draws "
                f"({len(accepted)} tiles accepted)"
            )
    return accepted


def _acceptable(tiles: list[int], cap: int) -> bool:
    common, used = -1, 0
    for t in tiles:
        common &= t
        used |= t
    return not common and used.bit_count() > cap and _lonely_tile(tiles, cap) is None


def generate(config: GeneratorConfig) -> Instance:
    """Draw a random instance satisfying rules 1 and 3 to 9.

    The alphabet of the result is the set of pool symbols actually used, so
    it may be smaller than ``config.symbol_count``.
    """
    rng = random.Random(config.rng_seed)
    for _ in range(config.max_restarts):
        tiles = _draw(config, rng)
        if _acceptable(tiles, config.capacity):
            return Instance.from_sets(
                ([str(a) for a in range(config.symbol_count) if t >> a & 1] for t in tiles),
                config.capacity,
            )
    raise GenerationError(
        "instance", f"rules 4, 6 or 8 still violated after {config.max_restarts} restarts"
    )


CAPACITIES = range(15, 51, 5)
TILE_COUNTS = range(20, 101, 5)
PER_COMBINATION = 6


def derive_seed(base_seed: int, *key) -> int:
    text = ":".join(str(x) for x in (base_seed,) + key).encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "little")


def sweep_configs(base_seed: int = 0) -> Iterator[tuple[str, GeneratorConfig]]:
    """All (instance id, config) pairs of the benchmark grid."""
    for cap in CAPACITIES:
        for ns in range(cap + 5, 101, 5):
            for nt in TILE_COUNTS:
                for rep in range(PER_COMBINATION):
                    seed = derive_seed(base_seed, cap, ns, nt, rep)
                    yield f"C{cap}_S{ns}_T{nt}_r{rep}", GeneratorConfig(cap, ns, nt, seed)


def generate_sweep(base_seed: int = 0) -> Iterator[tuple[str, Instance]]:
    for name, cfg in sweep_configs(base_seed):
        yield name, generate(cfg)

"""Name-based access to every heuristic, as used by the CLI and the benchmark."""

from __future__ import annotations

import dataclasses
import random

from .core import Instance, Pagination, is_valid
from .genetic import GaConfig, run_ga
from .greedy import AnyFitStrategy, any_fit, best_fusion
from .oar import overload_and_remove

ANY_FIT = {
    "first-fit": AnyFitStrategy.FIRST,
    "next-fit": AnyFitStrategy.NEXT,
    "best-fit-before": AnyFitStrategy.BEST_BEFORE,
    "best-fit-after": AnyFitStrategy.BEST_AFTER,
    "worst-fit": AnyFitStrategy.WORST,
    "almost-worst-fit": AnyFitStrategy.ALMOST_WORST,
}
SOLVERS = tuple(ANY_FIT) + ("best-fusion", "oar", "standard-ga", "grouping-ga")
DEFAULT_ROSTER = ("first-fit", "best-fusion", "oar", "standard-ga", "grouping-ga")


def solve(
    instance: Instance,
    name: str,
    seed: int = 0,
    order: list[int] | None = None,
    shuffle: bool = False,
    decant: bool = True,
    ga_config: GaConfig | None = None,
) -> Pagination:
    """Run solver ``name``.  Tiles are taken in instance order unless
    ``order`` is given or ``shuffle`` asks for a seeded permutation.

    Any Fit results are returned as produced; decantation applies to the
    other solvers.
    """
    if name not in SOLVERS:
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVERS)}")
    if order is None and shuffle:
        order = random.Random(seed).sample(range(instance.n_tiles), instance.n_tiles)
    if name in ANY_FIT:
        result = any_fit(instance, order, ANY_FIT[name])
    elif name == "best-fusion":
        result = best_fusion(instance, order, decant_result=decant)
    elif name == "oar":
        result = overload_and_remove(instance, order, decant_result=decant)
    else:
        cfg = ga_config or GaConfig()
        cfg = dataclasses.replace(cfg, rng_seed=seed)
        model = "standard" if name == "standard-ga" else "grouping"
        result = run_ga(instance, model, cfg, decant_result=decant).pagination
    check = is_valid(instance, result)
    assert check, f"{name} produced an invalid pagination: {check.reason}"
    return result

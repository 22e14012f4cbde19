"""Solvers for Pagination, the bin packing variant whose items are sets of
symbols that are stored once per page however many items share them."""

from .core import (
    InfeasibleError,
    Instance,
    Pagination,
    PaginationError,
    cardinality,
    connected_components,
    is_valid,
    loss,
    multiplicity,
    relative_size,
    tile_size,
    volume,
)
from .exact import OracleResult, brute_force_optimal, export_lp, verify_optimality_gap
from .genetic import GaConfig, run_ga
from .greedy import AnyFitStrategy, any_fit, best_fusion, decant, first_fit
from .oar import overload_and_remove
from .solvers import DEFAULT_ROSTER, SOLVERS, solve

__version__ = "0.1.0"

"""Command-line entry point: ``pagination <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 infeasible or invalid input,
3 a resource limit stopped the work.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench, exact
from .core import PaginationError, is_valid
from .genetic import GaConfig
from .instances import (
    RNG_ALGORITHM,
    GenerationError,
    GeneratorConfig,
    af_adversarial,
    check_rules,
    dumps_instance,
    dumps_pagination,
    generate,
    loads_pagination,
    read_instance,
    reduce,
    specialized_adversarial,
    sweep_configs,
)
from .solvers import DEFAULT_ROSTER, SOLVERS, solve

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return read_instance(path)


def _ga_config(args) -> GaConfig:
    return GaConfig(
        population_size=args.population,
        generations=args.generations,
        crossover_rate=args.crossover_rate,
        mutation_rate=args.mutation_rate,
        disparity=args.disparity,
        elitism_count=args.elitism,
        rng_seed=args.seed,
    )


def _add_ga_flags(p) -> None:
    g = p.add_argument_group("genetic algorithms")
    g.add_argument("--population", type=int, default=80)
    g.add_argument("--generations", type=int, default=50)
    g.add_argument("--crossover-rate", type=float, default=0.90)
    g.add_argument("--mutation-rate", type=float, default=0.01)
    g.add_argument("--disparity", type=float, default=2.0, help="exponent d of the grouping fitness")
    g.add_argument("--elitism", type=int, default=1)


# -- subcommands ------------------------------------------------------------

def cmd_generate(args) -> int:
    cfg = GeneratorConfig(args.capacity, args.symbols, args.tiles, args.seed)
    inst = generate(cfg)
    _emit(dumps_instance(inst), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    configs = list(sweep_configs(args.seed))
    if args.limit is not None:
        configs = configs[: args.limit]
    for name, cfg in configs:
        (out / f"{name}.txt").write_text(dumps_instance(generate(cfg)))
    print(f"{len(configs)} instances written to {out} (rng {RNG_ALGORITHM}, base seed {args.seed})")
    return EXIT_OK


def cmd_check(args) -> int:
    inst = _load(args.input)
    if args.solution:
        p = loads_pagination(Path(args.solution).read_text())
        v = is_valid(inst, p)
        print(f"valid, {len(p)} pages" if v else f"invalid: {v.reason}")
        return EXIT_OK if v else EXIT_INPUT
    report = check_rules(inst)
    print(report.format())
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _load(args.input)
    red, log = reduce(inst)
    _emit(dumps_instance(red), args.out)
    print(f"reduced {inst.n_tiles} tiles to {red.n_tiles}, capacity {inst.capacity} to {red.capacity}",
          file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.input)
    p = solve(inst, args.algo, seed=args.seed, shuffle=args.shuffle,
              decant=not args.no_decant, ga_config=_ga_config(args))
    _emit(dumps_pagination(p), args.out)
    print(f"{args.algo}: {len(p)} pages", file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load(args.input)
    res = exact.brute_force_optimal(
        inst, max_tiles=args.max_tiles, max_nodes=args.max_nodes,
        time_limit=args.time_limit, allow_large=args.allow_large,
    )
    if args.out:
        Path(args.out).write_text(dumps_pagination(res.pagination, res.sidecar()))
    print(f"pages {res.optimal_page_count}, proven {'true' if res.proven else 'false'}")
    return EXIT_OK if res.proven else EXIT_LIMIT


def cmd_export_lp(args) -> int:
    inst = _load(args.input)
    _emit(exact.export_lp(inst, args.pages), args.out)
    return EXIT_OK


def _instances_from(args):
    if args.input:
        folder = Path(args.input)
        if not folder.is_dir():
            raise UsageError(f"not a directory: {folder}")
        files = sorted(folder.glob("*.txt"))
        if args.limit is not None:
            files = files[: args.limit]
        return [(f.stem, read_instance(f)) for f in files]
    configs = list(sweep_configs(args.seed))
    if args.limit is not None:
        configs = configs[: args.limit]
    return [(name, generate(cfg)) for name, cfg in configs]


def _charts(records, folder, window) -> None:
    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    w = min(window, len(records)) or 1
    (folder / "difficulty.svg").write_text(bench.difficulty_chart(records, w))
    (folder / "quality.svg").write_text(bench.quality_chart(records, w))


def cmd_bench(args) -> int:
    roster = args.roster.split(",") if args.roster else list(DEFAULT_ROSTER)
    unknown = [s for s in roster if s not in SOLVERS]
    if unknown:
        raise UsageError(f"unknown solver(s): {', '.join(unknown)}")
    records = bench.run_benchmark(
        _instances_from(args), roster, seed=args.seed, jobs=args.jobs, ga_config=_ga_config(args)
    )
    if args.out:
        bench.write_records_csv(records, args.out)
    else:
        bench.write_records_csv(records, sys.stdout)
    if args.charts:
        _charts(records, args.charts, args.window)
    print(f"{len(records)} instances benchmarked", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args) -> int:
    if not os.path.isfile(args.input):
        raise UsageError(f"no such file: {args.input}")
    try:
        records = bench.read_records_csv(args.input)
        report = bench.predictor_report(records)
    except (ValueError, IndexError) as exc:
        raise PaginationError(str(exc)) from None
    ranks = bench.rank_summary(records)
    if args.format == "json":
        out = json.dumps({"records": len(records), "pearson_r": report, "best_rate": ranks}, indent=2) + "\n"
    else:
        lines = ["kind,name,value"]
        lines += [f"pearson_r,{k},{v!r}" for k, v in report.items()]
        lines += [f"best_rate,{k},{v!r}" for k, v in ranks.items()]
        out = "\n".join(lines) + "\n"
    _emit(out, args.out)
    if args.charts:
        _charts(records, args.charts, args.window)
    return EXIT_OK


def cmd_adversarial(args) -> int:
    if args.family == "af":
        inst, opt, worst = af_adversarial(args.capacity)
        trap = None
    else:
        inst, opt, trap = specialized_adversarial(args.capacity)
        worst = None
    if args.solve:
        if args.order == "worst" and worst is None:
            raise UsageError("--order worst only applies to the af family")
        order = worst if args.order == "worst" else None
        p = solve(inst, args.solve, seed=args.seed, order=order, ga_config=_ga_config(args))
        if args.out:
            Path(args.out).write_text(dumps_pagination(p))
        print(f"{args.solve}: {len(p)} pages (optimum {len(opt)})")
        return EXIT_OK
    _emit(dumps_instance(inst), args.out)
    note = f"optimum {len(opt)} pages"
    if trap is not None:
        note += f", trap {len(trap)} pages"
    print(note, file=sys.stderr)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pagination", description="Solve and benchmark Pagination instances.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("--seed", type=int, default=0)
        return p

    p = add("generate", cmd_generate, "draw one random instance")
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--symbols", type=int, required=True)
    p.add_argument("--tiles", type=int, required=True)
    p.add_argument("--out")

    p = add("sweep", cmd_sweep, "write the whole benchmark grid to a folder")
    p.add_argument("--out", required=True)
    p.add_argument("--limit", type=int)

    p = add("check", cmd_check, "check the simplifying rules, or a solution")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--solution")

    p = add("reduce", cmd_reduce, "apply the rule reductions to a fixpoint")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")

    p = add("solve", cmd_solve, "run one heuristic")
    p.add_argument("--algo", choices=SOLVERS, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--shuffle", action="store_true", help="feed tiles in a seeded random order")
    p.add_argument("--no-decant", action="store_true")
    _add_ga_flags(p)

    p = add("oracle", cmd_oracle, "exact optimum of a small instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--max-tiles", type=int, default=exact.MAX_TILES)
    p.add_argument("--max-nodes", type=int, default=exact.MAX_NODES)
    p.add_argument("--time-limit", type=float, default=exact.TIME_LIMIT)
    p.add_argument("--allow-large", action="store_true")

    p = add("export-lp", cmd_export_lp, "write the 0-1 model in LP format")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pages", type=int)
    p.add_argument("--out")

    p = add("bench", cmd_bench, "run a solver roster on a folder of instances or the sweep")
    p.add_argument("--in", dest="input", help="folder of instance files (default: generate the sweep)")
    p.add_argument("--limit", type=int)
    p.add_argument("--roster", help="comma-separated solver names")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--charts", help="folder for SVG charts")
    p.add_argument("--window", type=int, default=500)
    _add_ga_flags(p)

    p = add("analyze", cmd_analyze, "correlations and ranks from a benchmark CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--charts")
    p.add_argument("--window", type=int, default=500)

    p = add("adversarial", cmd_adversarial, "build a worst-case instance, optionally solve it")
    p.add_argument("--family", choices=("af", "specialized"), required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--solve", choices=SOLVERS)
    p.add_argument("--order", choices=("given", "worst"), default="given")
    p.add_argument("--out")
    _add_ga_flags(p)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (exact.OracleLimitError, GenerationError) as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (PaginationError, bench.ZeroVarianceError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # bad flag values caught by config validation
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

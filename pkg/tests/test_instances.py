from math import comb

import pytest
from hypothesis import given, settings

from pagination import InfeasibleError, Instance, Pagination, PaginationError, is_valid
from pagination.instances import (
    GenerationError,
    GeneratorConfig,
    af_adversarial,
    check_rules,
    dumps_instance,
    dumps_pagination,
    generate,
    loads_instance,
    loads_pagination,
    read_instance,
    reduce,
    specialized_adversarial,
    sweep_configs,
    write_instance,
)
from pagination.instances.generator import CAPACITIES, PER_COMBINATION, TILE_COUNTS

from .strategies import small_instances


def digits(words, cap):
    """'12 126' style shorthand: one character per symbol."""
    return Instance.from_sets([list(w) for w in words.split()], cap)


# -- formats ----------------------------------------------------------------

def test_instance_file_is_bit_exact(four_tiles):
    text = dumps_instance(four_tiles)
    assert text == "pagination-instance v1\ncapacity 7\ntiles 4\na b c d e\nd e f\ne f g\nh i j k\n"
    assert loads_instance(text) == four_tiles


def test_solution_file_is_bit_exact():
    p = Pagination([[2, 3], [1, 0]])
    text = dumps_pagination(p)
    assert text == "pagination-solution v1\n2 3\n0 1\n"
    assert loads_pagination(text) == p
    with_sidecar = dumps_pagination(p, "# proven true nodes 5")
    assert with_sidecar.endswith("# proven true nodes 5\n")
    assert loads_pagination(with_sidecar) == p


def test_tokens_are_arbitrary_strings(tmp_path):
    inst = Instance.from_sets([["α", "x-1"], ["x-1", "[]"]], 3)
    path = tmp_path / "i.txt"
    write_instance(inst, path)
    assert read_instance(path) == inst
    assert inst.tokens == ("α", "x-1", "[]")


@pytest.mark.parametrize(
    "text",
    [
        "pagination-instance v2\ncapacity 3\ntiles 1\na\n",
        "pagination-instance v1\ncapacity x\ntiles 1\na\n",
        "pagination-instance v1\ncapacity 3\ntiles 2\na\n",
        "pagination-instance v1\ncapacity 3\ntiles 1\na a\n",
        "pagination-instance v1\ncapacity 3\ntiles 1\n\n",
    ],
)
def test_bad_instance_files(text):
    with pytest.raises(PaginationError):
        loads_instance(text)


@given(small_instances())
def test_instance_round_trip(instance):
    assert loads_instance(dumps_instance(instance)) == instance


# -- rules ------------------------------------------------------------------

def test_four_tiles_satisfies_rules_1_to_8(four_tiles):
    report = check_rules(four_tiles)
    assert report.satisfied(range(1, 9))
    assert report.violated() == []


def test_rule1_witness():
    report = check_rules(digits("12 126", 5))
    assert report.violated() == [1, 8] or 1 in report.violated()
    assert report[1].witness == (0, 1)
    assert check_rules(digits("12 345 126 378", 5))[1].witness == (0, 2)


def test_rule3_and_rule9():
    report = check_rules(digits("1234 15 6", 4))
    assert not report[3].ok and report[3].witness == (0,)
    assert not report[9].ok and report[9].witness == (2,)


def test_rule4_5_6_witnesses():
    inst = Instance.from_sets([["z", "a"], ["z", "b"], ["z", "c"]], 3)
    assert check_rules(inst)[4].witness == (0,)
    unused = Instance(3, ("a", "b", "c", "q"), (0b011, 0b110))
    assert check_rules(unused)[5].witness == (3,)
    lonely = digits("12 34 567", 4)
    assert check_rules(lonely)[6].witness == (2,)


def test_report_format_names_every_rule(four_tiles):
    text = check_rules(digits("12 126", 5)).format()
    assert text.count("\n") == 8
    assert "rule 1: no tile is included in another one: VIOLATED" in text


# -- reduction --------------------------------------------------------------

def test_reduce_drops_subsumed_tile_and_lifts_it_back():
    inst = digits("12 126 345 378", 5)
    red, log = reduce(inst)
    # 12 goes under 126, 126 then fits with nothing, 3 is shared by the rest
    assert log.steps == [("subsumed", 0, 1), ("dedicated", 1), ("strip", "3")]
    assert red.capacity == 4 and red.n_tiles == 2
    lifted = log.lift(Pagination([[0, 1]]))
    assert is_valid(inst, lifted)
    assert len(lifted) == 2
    assert any({0, 1} <= set(p) for p in lifted)


def test_reduce_fixpoint_is_unchanged():
    inst = digits("123 145 246 356", 5)
    assert check_rules(inst).satisfied([1, 3, 4, 5, 6])
    red, log = reduce(inst)
    assert red == inst and log.steps == []


def test_reduce_strips_universal_symbol():
    inst = Instance.from_sets([["z", "a", "b"], ["z", "c", "d"], ["z", "a", "e"]], 5)
    red, log = reduce(inst)
    assert red.capacity == 4
    assert "z" not in red.tokens
    assert log.capacity_drop == 1


def test_reduce_rejects_oversized_tile():
    with pytest.raises(InfeasibleError):
        reduce(digits("123456 12", 5))


@settings(max_examples=60)
@given(small_instances())
def test_reduce_is_idempotent(instance):
    red, _ = reduce(instance)
    again, log2 = reduce(red)
    assert again == red
    assert log2.steps == []


@settings(max_examples=60)
@given(small_instances())
def test_lift_of_valid_pagination_is_valid(instance):
    from pagination import first_fit

    red, log = reduce(instance)
    lifted = log.lift(first_fit(red))
    assert is_valid(instance, lifted)


# -- generator --------------------------------------------------------------

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_generated_instance_passes_rules(seed):
    inst = generate(GeneratorConfig(15, 20, 20, rng_seed=seed))
    report = check_rules(inst)
    assert report.satisfied([1, 3, 4, 5, 6, 7, 8, 9]), report.format()
    assert inst.n_tiles == 20 and inst.capacity == 15


def test_capacity_three_forces_pairs():
    inst = generate(GeneratorConfig(3, 5, 4, rng_seed=7))
    assert all(s == 2 for s in inst.sizes)


def test_generator_is_deterministic():
    cfg = GeneratorConfig(20, 40, 30, rng_seed=123)
    assert generate(cfg) == generate(cfg)
    assert generate(cfg) != generate(GeneratorConfig(20, 40, 30, rng_seed=124))


@pytest.mark.parametrize("args", [(2, 5, 4), (5, 5, 4), (5, 8, 1)])
def test_generator_config_invariants(args):
    with pytest.raises(ValueError):
        GeneratorConfig(*args)


def test_generator_reports_exhausted_stage():
    # with C=3 only 10 pairs exist over 5 symbols, so 11 tiles cannot be drawn
    with pytest.raises(GenerationError) as err:
        generate(GeneratorConfig(3, 5, 11, max_tile_attempts=200))
    assert err.value.stage == "tile"


def test_sweep_grid():
    configs = list(sweep_configs())
    per = {}
    for _, cfg in configs:
        key = (cfg.capacity, cfg.symbol_count, cfg.tile_count)
        per[key] = per.get(key, 0) + 1
    assert set(per.values()) == {PER_COMBINATION}
    assert sorted({c for c, _, _ in per}) == list(CAPACITIES)
    assert len({s for c, s, _ in per if c == 50}) == 10
    expected = sum((100 - c) // 5 for c in CAPACITIES) * len(TILE_COUNTS) * PER_COMBINATION
    assert len(configs) == expected == 11016
    assert len({cfg.rng_seed for _, cfg in configs}) == len(configs)


# -- adversarial ------------------------------------------------------------

@pytest.mark.parametrize("cap", [4, 6, 8])
def test_af_adversarial_shape(cap):
    inst, opt, worst = af_adversarial(cap)
    assert inst.n_tiles == 2 * comb(cap, cap // 2)
    assert all(s == cap // 2 for s in inst.sizes)
    assert len(opt) == 2 and is_valid(inst, opt)
    assert sorted(worst) == list(range(inst.n_tiles))


def test_af_adversarial_degenerate_capacity_two():
    from pagination import first_fit

    inst, opt, worst = af_adversarial(2)
    assert inst.n_tiles == 4
    assert len(first_fit(inst, worst)) == 2 == len(opt)


@pytest.mark.parametrize("cap, opt_pages, trap_pages", [(4, 3, 6), (6, 4, 9)])
def test_specialized_adversarial(cap, opt_pages, trap_pages):
    inst, opt, trap = specialized_adversarial(cap)
    assert is_valid(inst, opt) and is_valid(inst, trap)
    assert len(opt) == opt_pages == cap // 2 + 1
    assert len(trap) == trap_pages == 3 * cap // 2
    paired = [p for p in trap if len(p) == 2]
    assert len(paired) >= cap
    for i, j in paired:
        a, b = inst.tiles[i], inst.tiles[j]
        assert inst.sizes[i] == inst.sizes[j] == cap - 1
        assert (a & b).bit_count() == cap - 2


def test_specialized_c4_optimum_pages():
    inst, opt, _ = specialized_adversarial(4)
    unions = sorted("".join(sorted(set().union(*(inst.tile_tokens(j) for j in p)))) for p in opt)
    assert unions == ["1234", "12ab", "34ab"]


@pytest.mark.parametrize("bad", [3, 2, 5])
def test_specialized_rejects_bad_capacity(bad):
    with pytest.raises(ValueError):
        specialized_adversarial(bad)

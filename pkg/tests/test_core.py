from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pagination import (
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
from pagination.core import total_loss

from .strategies import small_instances

P3 = Pagination([[0, 1], [2, 3]])


def test_tile_size(four_tiles):
    assert tile_size(four_tiles.tiles[0]) == 5
    assert tile_size(four_tiles.tiles[3]) == 4
    assert tile_size(Instance.from_words("z", 1).tiles[0]) == 1


def test_volume_and_loss(four_tiles):
    assert volume(four_tiles, [0, 1]) == 6
    assert loss(four_tiles, [0, 1]) == 1
    assert volume(four_tiles, []) == 0
    assert volume(Instance.from_words("ab cd", 4), [0, 1]) == 4
    assert loss(four_tiles, [2, 3]) == 0
    assert [loss(four_tiles, p) for p in P3] == [1, 0]
    assert total_loss(four_tiles, P3) == 1


def test_loss_is_signed_for_overloaded_pages(four_tiles):
    assert loss(four_tiles, [0, 1, 2, 3]) == 7 - 11


def test_volume_rejects_bad_index(four_tiles):
    with pytest.raises(PaginationError):
        volume(four_tiles, [0, 9])


def test_cardinality(four_tiles):
    assert cardinality(four_tiles, [0, 1]) == 8
    assert cardinality(four_tiles, four_tiles) == 15
    assert cardinality(four_tiles, P3) == 15
    assert cardinality(four_tiles, []) == 0


def test_multiplicity(four_tiles):
    e = four_tiles.symbol("e")
    assert multiplicity(four_tiles, [0, 1], e) == 2
    assert multiplicity(four_tiles, four_tiles, e) == 3
    assert multiplicity(four_tiles, P3, e) == 3
    assert multiplicity(four_tiles, [3], e) == 0


def test_relative_size(four_tiles):
    assert relative_size(four_tiles, [0, 1], 1) == pytest.approx(2.0, abs=1e-9)
    assert relative_size(four_tiles, four_tiles, 1) == pytest.approx(4 / 3, abs=1e-9)
    assert relative_size(four_tiles, [3], 3) == 4
    # candidate not yet on the page is counted as if added
    assert relative_size(four_tiles, [0], 1) == pytest.approx(2.0, abs=1e-9)
    assert relative_size(four_tiles, [3], 0) == 5


def test_is_valid(four_tiles):
    assert is_valid(four_tiles, P3)
    bad = is_valid(four_tiles, Pagination([[0, 1, 2, 3]]))
    assert not bad and "11 symbols" in bad.reason
    missing = is_valid(four_tiles, Pagination([[0, 1], [2]]))
    assert not missing and "tile 3" in missing.reason
    dup = is_valid(four_tiles, Pagination([[0, 1], [1, 2, 3]]))
    assert not dup


def test_four_tiles_union_is_eleven_symbols(four_tiles):
    # hand count: a..k
    assert len(set("abcde") | set("def") | set("efg") | set("hijk")) == 11
    assert volume(four_tiles, range(4)) == 11


def test_connected_components(four_tiles):
    assert connected_components(four_tiles) == [[0, 1, 2], [3]]
    assert connected_components(Instance.from_words("ab cd ef", 2)) == [[0], [1], [2]]
    assert connected_components(Instance.from_sets([["1", "2"], ["2", "3"], ["3", "4"]], 4)) == [[0, 1, 2]]
    assert connected_components(four_tiles, [1, 3]) == [[1], [3]]


def test_pagination_drops_empty_pages():
    p = Pagination([[3, 1], [], [0]])
    assert p.pages == ((1, 3), (0,))
    assert len(p) == 2


@pytest.mark.parametrize(
    "tiles, cap",
    [([], 3), ([["a"]], 0), ([["a", "b"]], -1)],
)
def test_instance_invariants(tiles, cap):
    with pytest.raises(PaginationError):
        Instance.from_sets(tiles, cap)


def test_instance_rejects_bad_tokens():
    with pytest.raises(PaginationError):
        Instance(3, ("a", "a"), (1,))
    with pytest.raises(PaginationError):
        Instance(3, ("a b",), (1,))
    with pytest.raises(PaginationError):
        Instance(3, ("a",), (2,))


def _random_partition(instance, data):
    labels = data.draw(st.lists(st.integers(0, 3), min_size=instance.n_tiles, max_size=instance.n_tiles))
    groups = {}
    for j, g in enumerate(labels):
        groups.setdefault(g, []).append(j)
    return Pagination(groups.values())


@given(small_instances(), st.data())
def test_counts_do_not_depend_on_pagination(instance, data):
    p = _random_partition(instance, data)
    assert cardinality(instance, p) == cardinality(instance, instance)
    for a in range(instance.n_symbols):
        assert multiplicity(instance, p, a) == multiplicity(instance, instance, a)


@given(small_instances(), st.data())
def test_relative_sizes_telescope_to_volume(instance, data):
    page = data.draw(st.sets(st.integers(0, instance.n_tiles - 1), min_size=1))
    total = 0.0
    for j in page:
        f = relative_size(instance, page, j)
        assert instance.sizes[j] / len(page) - 1e-9 <= f <= instance.sizes[j] + 1e-9
        total += f
    assert total == pytest.approx(volume(instance, page), abs=1e-9)
    # exact rational check of the same identity
    exact = sum(
        Fraction(1, multiplicity(instance, page, a))
        for j in page
        for a in instance.symbols[j]
    )
    assert exact == volume(instance, page)


@given(small_instances(), st.data())
def test_volume_bounded_by_cardinality(instance, data):
    page = sorted(data.draw(st.sets(st.integers(0, instance.n_tiles - 1), min_size=1)))
    v, c = volume(instance, page), cardinality(instance, page)
    assert v <= c
    disjoint = all(
        not instance.tiles[i] & instance.tiles[j] for i in page for j in page if i < j
    )
    assert (v == c) == disjoint


@given(small_instances())
def test_components_partition_tiles(instance):
    comps = connected_components(instance)
    flat = [j for c in comps for j in c]
    assert sorted(flat) == list(range(instance.n_tiles))
    for a in comps:
        for b in comps:
            if a is not b:
                ua = 0
                for j in a:
                    ua |= instance.tiles[j]
                assert all(not ua & instance.tiles[j] for j in b)


@settings(max_examples=50)
@given(small_instances(max_tiles=6), st.data())
def test_page_count_times_mean_cardinality_is_constant(instance, data):
    p = _random_partition(instance, data)
    mean = sum(cardinality(instance, page) for page in p) / len(p)
    assert len(p) * mean == pytest.approx(cardinality(instance, instance))

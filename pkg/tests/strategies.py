from hypothesis import strategies as st

from pagination import Instance


@st.composite
def small_instances(draw, max_tiles=7, max_symbols=8, feasible=True):
    n_sym = draw(st.integers(2, max_symbols))
    tiles = draw(
        st.lists(
            st.frozensets(st.integers(0, n_sym - 1), min_size=1, max_size=n_sym),
            min_size=1,
            max_size=max_tiles,
        )
    )
    largest = max(len(t) for t in tiles)
    cap = draw(st.integers(largest if feasible else 1, n_sym + 1))
    return Instance.from_sets(([f"s{a}" for a in sorted(t)] for t in tiles), cap)

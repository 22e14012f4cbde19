from pagination import connected_components


def union_size(instance, tiles):
    u = 0
    for j in tiles:
        u |= instance.tiles[j]
    return u.bit_count()


def improving_moves(instance, pagination):
    """Every page, component or tile that fits on a page of lower index."""
    pages = [list(p) for p in pagination]
    found = []
    for k, page in enumerate(pages):
        items = [page] + connected_components(instance, page) + [[j] for j in page]
        for item in items:
            for dest in range(k):
                if union_size(instance, pages[dest] + item) <= instance.capacity:
                    found.append((tuple(item), k, dest))
    return found

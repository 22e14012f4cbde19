"""Plain-text instance and solution files.

Instance::

    pagination-instance v1
    capacity 7
    tiles 4
    a b c d e
    d e f
    ...

Solution::

    pagination-solution v1
    0 1
    2 3

Solution readers ignore lines starting with ``#`` (the oracle appends a
``# proven <true|false> nodes <n>`` line).
"""

from __future__ import annotations

from pathlib import Path

from ..core import Instance, Pagination, PaginationError

INSTANCE_HEADER = "pagination-instance v1"
SOLUTION_HEADER = "pagination-solution v1"


def dumps_instance(instance: Instance) -> str:
    lines = [
        INSTANCE_HEADER,
        f"capacity {instance.capacity}",
        f"tiles {instance.n_tiles}",
    ]
    lines += [" ".join(instance.tile_tokens(i)) for i in range(instance.n_tiles)]
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> Instance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3 or lines[0].strip() != INSTANCE_HEADER:
        raise PaginationError(f"expected {INSTANCE_HEADER!r} header")
    capacity = _keyed_int(lines[1], "capacity")
    n = _keyed_int(lines[2], "tiles")
    body = lines[3:]
    if len(body) != n:
        raise PaginationError(f"header announces {n} tiles, found {len(body)}")
    tiles = []
    for k, line in enumerate(body):
        toks = line.split()
        if not toks:
            raise PaginationError(f"tile {k} is empty")
        if len(set(toks)) != len(toks):
            raise PaginationError(f"tile {k} repeats a symbol")
        tiles.append(toks)
    return Instance.from_sets(tiles, capacity)


def _keyed_int(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise PaginationError(f"expected '{key} <int>', got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise PaginationError(f"expected an integer after {key!r}") from None


def dumps_pagination(pagination: Pagination, sidecar: str | None = None) -> str:
    lines = [SOLUTION_HEADER] + [" ".join(map(str, p)) for p in pagination]
    if sidecar:
        lines.append(sidecar)
    return "\n".join(lines) + "\n"


def loads_pagination(text: str) -> Pagination:
    lines = [ln for ln in text.split("\n") if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != SOLUTION_HEADER:
        raise PaginationError(f"expected {SOLUTION_HEADER!r} header")
    pages = []
    for line in lines[1:]:
        try:
            pages.append([int(x) for x in line.split()])
        except ValueError:
            raise PaginationError(f"bad page line {line!r}") from None
    return Pagination(pages)


def read_instance(path) -> Instance:
    return loads_instance(Path(path).read_text(encoding="utf-8"))


def write_instance(instance: Instance, path) -> None:
    Path(path).write_text(dumps_instance(instance), encoding="utf-8", newline="\n")


def read_pagination(path) -> Pagination:
    return loads_pagination(Path(path).read_text(encoding="utf-8"))


def write_pagination(pagination: Pagination, path, sidecar: str | None = None) -> None:
    Path(path).write_text(dumps_pagination(pagination, sidecar), encoding="utf-8", newline="\n")

"""Small-order loop enumeration, the built-in corpus and inverse cycles."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator

import numpy as np

from .loop import FiniteLoop, parse_loop
from .mappings import Permutation

MAX_ORDER = 6
FLAGGED_ORDER = 7


class OrderTooLarge(ValueError):
    pass


# filters that can be enforced cell-by-cell during the search
_PRUNABLE = {"commutative", "exponent2"}


def _fill(n: int, grid: list[list[int]], cells: list[tuple[int, int]], k: int,
          rowmask: list[int], colmask: list[int], prune: frozenset[str]) -> Iterator[np.ndarray]:
    if k == len(cells):
        yield np.array(grid, dtype=np.intp)
        return
    i, j = cells[k]
    if "commutative" in prune and j < i:
        choices = [grid[j][i]]
    elif "exponent2" in prune and i == j:
        choices = [0]
    else:
        choices = range(n)
    free = ~(rowmask[i] | colmask[j])
    for v in choices:
        bit = 1 << v
        if not free & bit:
            continue
        if "exponent2" in prune and i != j and v == 0:
            continue
        grid[i][j] = v
        rowmask[i] |= bit
        colmask[j] |= bit
        yield from _fill(n, grid, cells, k + 1, rowmask, colmask, prune)
        rowmask[i] ^= bit
        colmask[j] ^= bit
    grid[i][j] = -1


def _start(n: int):
    grid = [[-1] * n for _ in range(n)]
    for i in range(n):
        grid[0][i] = i
        grid[i][0] = i
    rowmask = [1 << i if i else (1 << n) - 1 for i in range(n)]
    colmask = list(rowmask)
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    return grid, cells, rowmask, colmask


def normalized_tables(n: int, prune: Iterable[str] = ()) -> Iterator[np.ndarray]:
    """0-based normalized Latin squares of order ``n`` in lexicographic order.

    Row 0 and column 0 are the identity; ``prune`` may name ``commutative``
    and/or ``exponent2`` to cut the search at the cell level.
    """
    if n < 1:
        raise ValueError("order must be positive")
    grid, cells, rowmask, colmask = _start(n)
    if n == 1:
        yield np.zeros((1, 1), dtype=np.intp)
        return
    yield from _fill(n, grid, cells, 0, rowmask, colmask, frozenset(prune) & _PRUNABLE)


def _second_rows(n: int) -> list[list[int]]:
    """Completions of row 1, the unit of parallel work."""
    grid, cells, rowmask, colmask = _start(n)
    row_cells = [c for c in cells if c[0] == 1]
    out = []
    for t in _fill(n, [r[:] for r in grid], row_cells, 0, rowmask[:], colmask[:], frozenset()):
        out.append([int(v) for v in t[1]])
    return out


def _tables_with_row(n: int, row: list[int], prune: tuple[str, ...]) -> list[np.ndarray]:
    grid, cells, rowmask, colmask = _start(n)
    for j, v in enumerate(row):
        if j:
            grid[1][j] = v
            rowmask[1] |= 1 << v
            colmask[j] |= 1 << v
    rest = [c for c in cells if c[0] != 1]
    return list(_fill(n, grid, rest, 0, rowmask, colmask, frozenset(prune) & _PRUNABLE))


def _matches(L: FiniteLoop, filters: tuple[str, ...]) -> bool:
    from .properties import has_property

    for f in filters:
        if f == "universal-osborn":
            from .isotopy import is_universal_osborn

            if not is_universal_osborn(L).holds:
                return False
        elif not has_property(L, f).holds:
            return False
    return True


def enumerate_loops(n: int, where: Iterable[str] = (), *, allow_order7: bool = False,
                    workers: int | None = None) -> Iterator[FiniteLoop]:
    """Every loop on ``1..n`` with identity 1 and natural first row and column.

    ``where`` lists property names (see :mod:`osborn.properties`) that every
    emitted loop must satisfy.  With ``workers > 1`` the search is split by
    the completion of the second row; output order is unchanged.
    """
    limit = FLAGGED_ORDER if allow_order7 else MAX_ORDER
    if n > limit:
        raise OrderTooLarge(f"order {n} exceeds the exhaustive limit {limit}")
    filters = tuple(where)
    if workers is None:
        workers = int(os.environ.get("OSBORN_WORKERS", "1"))

    if workers > 1 and n >= 4:
        rows = _second_rows(n)
        with ProcessPoolExecutor(workers) as ex:
            for chunk in ex.map(_tables_with_row, [n] * len(rows), rows,
                                [filters] * len(rows)):
                for t in chunk:
                    L = FiniteLoop.from_zero_based(t)
                    if _matches(L, filters):
                        yield L
        return

    for t in normalized_tables(n, filters):
        L = FiniteLoop.from_zero_based(t)
        if _matches(L, filters):
            yield L


def count_loops(n: int, **kw) -> int:
    return sum(1 for _ in enumerate_loops(n, **kw))


@lru_cache(maxsize=None)
def enumerated(n: int) -> tuple[FiniteLoop, ...]:
    """Cached tuple of all normalized loops of order ``n`` (n ≤ 6)."""
    return tuple(enumerate_loops(n, workers=1))


# -- inverse cycles -----------------------------------------------------------

@dataclass(frozen=True)
class InverseCycleReport:
    rho: Permutation
    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def notation(self, fixed_points: bool = True) -> str:
        cyc = [c for c in self.cycles if fixed_points or len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cyc)


def inverse_cycles(L: FiniteLoop) -> InverseCycleReport:
    """Cycle decomposition of ``x ↦ x^ρ``."""
    rho = Permutation(L.rho_table, zero_based=True)
    return InverseCycleReport(rho, tuple(rho.cycles()))


# -- corpus -------------------------------------------------------------------

def _cyclic(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def _klein() -> np.ndarray:
    i = np.arange(4)
    return i[:, None] ^ i[None, :]


def _s3() -> np.ndarray:
    import itertools

    perms = sorted(itertools.permutations(range(3)))   # identity first
    index = {p: k for k, p in enumerate(perms)}
    # composition in the right-action convention: first p, then q
    return np.array([[index[tuple(q[p[i]] for i in range(3))] for q in perms] for p in perms])


def _data(name: str) -> str:
    return resources.files("osborn.data").joinpath(name).read_text()


def kinyon16() -> FiniteLoop:
    return parse_loop(_data("kinyon16.tab"), name="kinyon16")


@lru_cache(maxsize=1)
def _corpus() -> dict[str, FiniteLoop]:
    out = {"kinyon16": kinyon16()}
    for n in range(1, 7):
        out[f"z{n}"] = FiniteLoop.from_zero_based(_cyclic(n), name=f"z{n}")
    out["v4"] = FiniteLoop.from_zero_based(_klein(), name="v4")
    out["s3"] = FiniteLoop.from_zero_based(_s3(), name="s3")
    return out


def corpus() -> dict[str, FiniteLoop]:
    """Named loops: ``kinyon16``, cyclic groups ``z1``..``z6``, ``v4``, ``s3``."""
    return dict(_corpus())


"""Finite loops given by Cayley tables.

Elements are the integers ``1..n`` at every public boundary, exactly as they
appear in printed multiplication tables.  Internally the tables are stored
0-based in numpy arrays so that identity checkers can evaluate whole
quantifier spaces at once; the ``*_table`` attributes expose those arrays
(read-only) for that purpose.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Element = int


class LoopError(ValueError):
    """Base class for rejected tables."""


class MalformedFile(LoopError):
    pass


class NotLatinSquare(LoopError):
    pass


class NoIdentity(LoopError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.intp)
    a.setflags(write=False)
    return a


class FiniteLoop:
    """An immutable loop of order ``n``.

    ``mul_table[i, j]`` is the 0-based index of ``(i+1)·(j+1)``.  The division
    and inverse tables are derived once at construction:

    * ``ldiv_table[x, y]`` is ``x\\y``, the unique ``z`` with ``x·z = y``
    * ``rdiv_table[x, y]`` is ``x/y``, the unique ``z`` with ``z·y = x``
    * ``lam_table[x]`` is the left inverse ``e/x``; ``rho_table[x]`` is ``x\\e``
    """

    __slots__ = ("order", "e0", "mul_table", "ldiv_table", "rdiv_table",
                 "lam_table", "rho_table", "name")

    def __init__(self, table: Sequence[Sequence[int]] | np.ndarray, *, name: str = "",
                 zero_based: bool = False):
        t = np.array(table, dtype=np.intp)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise MalformedFile(f"table must be a non-empty square grid, got shape {t.shape}")
        n = t.shape[0]
        if not zero_based:
            t = t - 1
        if t.min() < 0 or t.max() >= n:
            raise MalformedFile(f"entries must lie in 1..{n}")

        full = np.arange(n)
        bad_rows = np.flatnonzero((np.sort(t, axis=1) != full).any(axis=1))
        if bad_rows.size:
            raise NotLatinSquare(f"row {bad_rows[0] + 1} repeats a value")
        bad_cols = np.flatnonzero((np.sort(t, axis=0) != full[:, None]).any(axis=0))
        if bad_cols.size:
            raise NotLatinSquare(f"column {bad_cols[0] + 1} repeats a value")

        two_sided = ((t == full).all(axis=1) & (t == full[:, None]).all(axis=0))
        candidates = np.flatnonzero(two_sided)
        if not candidates.size:
            raise NoIdentity("no element e with e·x = x·e = x for all x")
        e0 = candidates[0]

        rows = np.repeat(full, n).reshape(n, n)
        cols = np.tile(full, n).reshape(n, n)
        ld = np.empty_like(t)
        rd = np.empty_like(t)
        ld[rows, t] = cols          # x·y = t  =>  x\t = y
        rd[t, cols] = rows          # x·y = t  =>  t/y = x

        self.order = n
        self.e0 = int(e0)
        self.name = name
        self.mul_table = _frozen(t)
        self.ldiv_table = _frozen(ld)
        self.rdiv_table = _frozen(rd)
        self.lam_table = _frozen(rd[e0])
        self.rho_table = _frozen(ld[:, e0])

    @classmethod
    def from_zero_based(cls, table: np.ndarray, name: str = "") -> "FiniteLoop":
        return cls(table, name=name, zero_based=True)

    # -- element API (1-based) ------------------------------------------------

    @property
    def identity(self) -> Element:
        return self.e0 + 1

    @property
    def elements(self) -> range:
        return range(1, self.order + 1)

    def _index(self, x: Element) -> int:
        if not (1 <= x <= self.order):
            raise ValueError(f"element {x} outside 1..{self.order}")
        return x - 1

    def mul(self, x: Element, y: Element) -> Element:
        return int(self.mul_table[self._index(x), self._index(y)]) + 1

    def ldiv(self, x: Element, y: Element) -> Element:
        return int(self.ldiv_table[self._index(x), self._index(y)]) + 1

    def rdiv(self, x: Element, y: Element) -> Element:
        return int(self.rdiv_table[self._index(x), self._index(y)]) + 1

    def left_inverse(self, x: Element) -> Element:
        return int(self.lam_table[self._index(x)]) + 1

    def right_inverse(self, x: Element) -> Element:
        return int(self.rho_table[self._index(x)]) + 1

    def cayley(self) -> np.ndarray:
        """The 1-based Cayley table as a fresh array."""
        return self.mul_table + 1

    # -- misc -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteLoop) and np.array_equal(self.mul_table, other.mul_table)

    def __hash__(self) -> int:
        return hash(self.mul_table.tobytes())

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteLoop{label} order={self.order} identity={self.identity}>"


def mul(L: FiniteLoop, x: Element, y: Element) -> Element:
    return L.mul(x, y)


def ldiv(L: FiniteLoop, x: Element, y: Element) -> Element:
    return L.ldiv(x, y)


def rdiv(L: FiniteLoop, x: Element, y: Element) -> Element:
    return L.rdiv(x, y)


def left_inverse(L: FiniteLoop, x: Element) -> Element:
    return L.left_inverse(x)


def right_inverse(L: FiniteLoop, x: Element) -> Element:
    return L.right_inverse(x)


def parse_loop(text: str, name: str = "") -> FiniteLoop:
    """Parse the ``.tab`` format.

    Lines starting with ``#`` are comments.  The first remaining line holds
    ``n``; the next ``n`` lines hold the rows of the table.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedFile("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedFile(f"expected the order on the first line, got {lines[0]!r}") from None
    if n < 1:
        raise MalformedFile(f"order must be positive, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise MalformedFile(f"expected {n} rows, got {len(body)}")
    rows = []
    for i, ln in enumerate(body, 1):
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise MalformedFile(f"row {i} has a non-integer entry") from None
        if len(row) != n:
            raise MalformedFile(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(row)
    return FiniteLoop(rows, name=name)


def serialize_loop(L: FiniteLoop, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(str(L.order))
    for row in L.cayley():
        out.append(" ".join(str(int(v)) for v in row))
    return "\n".join(out) + "\n"


def load_loop(path, name: str | None = None) -> FiniteLoop:
    from pathlib import Path

    p = Path(path)
    return parse_loop(p.read_text(), name=p.stem if name is None else name)

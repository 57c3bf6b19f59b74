"""Translations, inner mappings and formal words in the multiplication group.

Maps act on the RIGHT throughout: ``y L_x = x·y``, ``y R_x = y·x``, and a
word ``F1 F2 ... Fk`` sends ``y`` to ``(...((y F1) F2)...) Fk``.  In other
words the leftmost generator is applied first.  Every composition in this
package follows that order, including :meth:`Permutation.then`.

The multiplication group itself is never enumerated; words are compared by
evaluating them at all ``n`` points.
"""
from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .loop import Element, FiniteLoop

KINDS = ("L", "R", "Li", "Ri")
_INVERSE_KIND = {"L": "Li", "Li": "L", "R": "Ri", "Ri": "R"}


class Permutation:
    """A bijection of ``1..n``; ``p(y)`` is the image of ``y``."""

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int] | np.ndarray, *, zero_based: bool = False):
        img = np.array(images, dtype=np.intp)
        if not zero_based:
            img = img - 1
        if img.ndim != 1 or not np.array_equal(np.sort(img), np.arange(img.size)):
            raise ValueError("images do not form a bijection")
        img.setflags(write=False)
        self._img = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n), zero_based=True)

    @property
    def order(self) -> int:
        return self._img.size

    @property
    def array(self) -> np.ndarray:
        """0-based image array."""
        return self._img

    def __call__(self, y: Element) -> Element:
        return int(self._img[y - 1]) + 1

    def images(self) -> list[int]:
        return [int(v) + 1 for v in self._img]

    def then(self, other: "Permutation") -> "Permutation":
        """``self`` followed by ``other``."""
        return Permutation(other._img[self._img], zero_based=True)

    __mul__ = then

    def inverse(self) -> "Permutation":
        return Permutation(np.argsort(self._img), zero_based=True)

    def is_identity(self) -> bool:
        return bool((self._img == np.arange(self._img.size)).all())

    def fixes(self, y: Element) -> bool:
        return int(self._img[y - 1]) == y - 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (fixed points included), each starting at its
        smallest element, ordered by that element."""
        seen = np.zeros(self.order, dtype=bool)
        out = []
        for start in range(self.order):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = int(self._img[j])
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self._img, other._img)

    def __hash__(self) -> int:
        return hash(self._img.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self.images()})"


def translation(L: FiniteLoop, side: str, a: Element) -> Permutation:
    """``L_a`` (``side='left'``) or ``R_a`` (``side='right'``)."""
    i = a - 1
    if side == "left":
        return Permutation(L.mul_table[i], zero_based=True)
    if side == "right":
        return Permutation(L.mul_table[:, i], zero_based=True)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


class Generator(NamedTuple):
    kind: str      # one of KINDS
    param: Element

    def inverse(self) -> "Generator":
        return Generator(_INVERSE_KIND[self.kind], self.param)

    def __str__(self) -> str:
        return f"{self.kind}:{self.param}"


def apply_generator(L: FiniteLoop, kind: str, a, z):
    """Vectorised right action of one generator on 0-based points ``z``.

    ``a`` may be a scalar or an array broadcastable against ``z``.
    """
    if kind == "L":
        return L.mul_table[a, z]
    if kind == "R":
        return L.mul_table[z, a]
    if kind == "Li":
        return L.ldiv_table[a, z]
    if kind == "Ri":
        return L.rdiv_table[z, a]
    raise ValueError(f"unknown generator kind {kind!r}")


class MappingWord(tuple):
    """An immutable sequence of :class:`Generator` symbols."""

    def __new__(cls, gens: Iterable[Generator | tuple[str, int]] = ()):
        items = []
        for g in gens:
            g = Generator(*g)
            if g.kind not in KINDS:
                raise ValueError(f"unknown generator kind {g.kind!r}")
            items.append(g)
        return super().__new__(cls, items)

    def __add__(self, other) -> "MappingWord":
        return MappingWord(tuple(self) + tuple(other))

    def __getitem__(self, item):
        got = super().__getitem__(item)
        return MappingWord(got) if isinstance(item, slice) else got

    def inverse(self) -> "MappingWord":
        return MappingWord(g.inverse() for g in reversed(self))

    def images(self, L: FiniteLoop, points: np.ndarray | None = None) -> np.ndarray:
        """0-based images of ``points`` (default: all of ``L``)."""
        z = np.arange(L.order) if points is None else np.asarray(points)
        for g in self:
            z = apply_generator(L, g.kind, g.param - 1, z)
        return z

    def permutation(self, L: FiniteLoop) -> Permutation:
        return Permutation(self.images(L), zero_based=True)

    def evaluate(self, L: FiniteLoop, y: Element) -> Element:
        return int(self.images(L, np.intp(y - 1))) + 1

    def __str__(self) -> str:
        return ",".join(str(g) for g in self)

    def __repr__(self) -> str:
        return f"MappingWord({str(self)!r})"


def parse_word(text: str) -> MappingWord:
    """Parse ``L:16,L:10,R:10,R:16``; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return MappingWord()
    gens = []
    for tok in text.split(","):
        kind, sep, param = tok.strip().partition(":")
        if not sep or kind not in KINDS:
            raise ValueError(f"bad generator token {tok!r}")
        gens.append(Generator(kind, int(param)))
    return MappingWord(gens)


def evaluate(word: MappingWord, L: FiniteLoop, y: Element) -> Element:
    return word.evaluate(L, y)


def words_equal(w1: MappingWord, w2: MappingWord, L: FiniteLoop) -> bool:
    return bool(np.array_equal(w1.images(L), w2.images(L)))


def trace(word: MappingWord, L: FiniteLoop, y: Element) -> list[Element]:
    """``y`` followed by its image after each generator."""
    out = [y]
    for g in word:
        out.append(MappingWord([g]).evaluate(L, out[-1]))
    return out


# -- named words -------------------------------------------------------------

def inner_T(L: FiniteLoop, x: Element) -> MappingWord:
    """Middle inner mapping ``R_x L_x^{-1}``."""
    return MappingWord([("R", x), ("Li", x)])


def inner_R(L: FiniteLoop, x: Element, y: Element) -> MappingWord:
    """Right inner mapping ``R_x R_y R_{xy}^{-1}``."""
    return MappingWord([("R", x), ("R", y), ("Ri", L.mul(x, y))])


def inner_L(L: FiniteLoop, x: Element, y: Element) -> MappingWord:
    """Left inner mapping ``L_x L_y L_{yx}^{-1}``."""
    return MappingWord([("L", x), ("L", y), ("Li", L.mul(y, x))])


def theta(L: FiniteLoop, y: Element) -> MappingWord:
    return MappingWord([("L", y), ("L", L.left_inverse(y))])


def bigE(L: FiniteLoop, x: Element) -> MappingWord:
    return MappingWord([("R", x), ("R", L.right_inverse(x))])


def iter_words(L: FiniteLoop, length: int) -> Iterator[MappingWord]:
    """All words of exactly ``length`` generators (``4n`` choices each)."""
    import itertools

    gens = [Generator(k, a) for k in KINDS for a in L.elements]
    for combo in itertools.product(gens, repeat=length):
        yield MappingWord(combo)

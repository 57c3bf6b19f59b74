"""Cryptographic functionals and the sender/receiver enciphering scheme.

A cryptographic functional at key ``x`` is a word ``F`` in the
multiplication group with ``yF = y`` for every message element ``y``.
Splitting ``F`` into a prefix (sender's component) and suffix (receiver's
component) gives an enciphering pair: ``y' = y·SFC`` and ``y = y'·RFC``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .loop import Element, FiniteLoop
from .mappings import MappingWord, inner_L, inner_R, inner_T, parse_word
from .properties import PropertyReport, local_sets

log = logging.getLogger(__name__)


class CryptoError(ValueError):
    pass


class BadSplit(CryptoError):
    pass


class UnknownLetter(CryptoError):
    pass


class UnknownElement(CryptoError):
    pass


class BrokenChain(CryptoError):
    pass


class SampleNotInCF(CryptoError):
    pass


@dataclass(frozen=True)
class CryptoFunctional:
    name: str
    key: Element
    components: tuple[MappingWord, ...]
    declared_degree: int

    def __post_init__(self):
        if self.declared_degree != len(self.word):
            raise ValueError("declared degree must equal the canonical word length")

    @property
    def word(self) -> MappingWord:
        out = MappingWord()
        for c in self.components:
            out = out + c
        return out

    @property
    def degree(self) -> int:
        return self.declared_degree


def _single(*gens) -> tuple[MappingWord, ...]:
    return tuple(MappingWord([g]) for g in gens)


def cf_cip(L: FiniteLoop, x: Element) -> CryptoFunctional:
    """``L_x R_{x^ρ}``: the cross inverse property ``xy·x^ρ = y``."""
    return CryptoFunctional("cip", x, _single(("L", x), ("R", L.right_inverse(x))), 2)


def cf_dlip(L: FiniteLoop, x: Element) -> CryptoFunctional:
    """``L_x L_{x^λ} R_{x^λ} R_x``: ``(x^λ·xy)x^λ·x = y``."""
    xl = L.left_inverse(x)
    return CryptoFunctional("dlip", x, _single(("L", x), ("L", xl), ("R", xl), ("R", x)), 4)


def cf_osi011(L: FiniteLoop, x: Element) -> CryptoFunctional:
    """``R_x L_x^{-1} R_x^{-1} R_{x^λ} R_x L_x``: ``z = x·{[x\\(zx)]/x · x^λ}x``."""
    xl = L.left_inverse(x)
    gens = (("R", x), ("Li", x), ("Ri", x), ("R", xl), ("R", x), ("L", x))
    return CryptoFunctional("osi011", x, _single(*gens), 6)


FUNCTIONALS = {"cip": cf_cip, "dlip": cf_dlip, "osi011": cf_osi011}


def functional(L: FiniteLoop, name: str, x: Element) -> CryptoFunctional:
    try:
        return FUNCTIONALS[name.lower()](L, x)
    except KeyError:
        raise KeyError(f"unknown functional {name!r}; choose from {', '.join(FUNCTIONALS)}") from None


def is_CI(L: FiniteLoop, F: CryptoFunctional | MappingWord) -> PropertyReport:
    """Does the word fix every element?  Witness: the first moved element."""
    word = F.word if isinstance(F, CryptoFunctional) else F
    name = F.name if isinstance(F, CryptoFunctional) else "word"
    moved = np.flatnonzero(word.images(L) != np.arange(L.order))
    if moved.size:
        return PropertyReport(name, False, (int(moved[0]) + 1,))
    note = ""
    if isinstance(F, CryptoFunctional):
        note = f"includes y = key {F.key}"
    return PropertyReport(name, True, note=note)


def cf_membership(L: FiniteLoop, F: MappingWord, x: Element) -> bool:
    """Is ``F`` in ``CF_x``, i.e. does it fix ``x``?"""
    return F.evaluate(L, x) == x


def membership_equivalences(L: FiniteLoop) -> PropertyReport:
    """For every parameter choice, the inner mappings fix exactly the local sets:
    ``T_(x)`` fixes ``C(x)``, ``R_(x,y)`` fixes ``N_λ(x,y)``, ``L_(x,y)`` fixes ``N_ρ(x,y)``.

    Membership is read off the evaluated words, the sets off their defining
    products, so the two sides are computed independently.  Witness:
    ``(kind, x, y, z)`` with kind 1, 2, 3 for T, R, L (``y`` is 0 for T).
    """
    everything = np.arange(L.order)
    for x in L.elements:
        fixed = _set_of(inner_T(L, x).images(L) == everything)
        comm = local_sets(L, x, x).commutant
        if fixed != comm:
            return PropertyReport("membership-equivalences", False, (1, x, 0, min(fixed ^ comm)))
    for x in L.elements:
        for y in L.elements:
            ls = local_sets(L, x, y)
            for kind, word, target in ((2, inner_R(L, x, y), ls.n_lambda),
                                       (3, inner_L(L, x, y), ls.n_rho)):
                fixed = _set_of(word.images(L) == everything)
                if fixed != target:
                    return PropertyReport("membership-equivalences", False,
                                          (kind, x, y, min(fixed ^ target)))
    return PropertyReport("membership-equivalences", True)


def _set_of(mask: np.ndarray) -> frozenset[int]:
    return frozenset(int(i) + 1 for i in np.flatnonzero(mask))


@dataclass(frozen=True)
class GroupAxiomReport:
    key: Element
    sample_size: int
    identity: bool
    closure: bool
    inverses: bool
    failure: tuple[int, int] | None = None   # sample indices of a non-closed pair

    @property
    def holds(self) -> bool:
        return self.identity and self.closure and self.inverses

    def __bool__(self) -> bool:
        return self.holds


def cf_group_axioms(L: FiniteLoop, x: Element, sample: Sequence[MappingWord]) -> GroupAxiomReport:
    """Check identity, pairwise closure and inverses of a sample of ``CF_x``."""
    for i, w in enumerate(sample):
        if not cf_membership(L, w, x):
            raise SampleNotInCF(f"sample word {i} ({w}) does not fix {x}")
    identity = cf_membership(L, MappingWord(), x)
    inverses = all(cf_membership(L, w.inverse(), x) for w in sample)
    failure = None
    # evaluating at x only is exact: membership of a product depends on the
    # images of x alone
    for i, a in enumerate(sample):
        ax = a.evaluate(L, x)
        for j, b in enumerate(sample):
            if b.evaluate(L, ax) != x:
                failure = (i, j)
                break
        if failure:
            break
    return GroupAxiomReport(x, len(sample), identity, failure is None, inverses, failure)


def split(F: CryptoFunctional | MappingWord, k: int) -> tuple[MappingWord, MappingWord]:
    """``(SFC, RFC)``: the first ``k`` generators and the rest."""
    word = F.word if isinstance(F, CryptoFunctional) else F
    if not 1 <= k < len(word):
        raise BadSplit(f"split index must satisfy 1 <= k < {len(word)}, got {k}")
    return word[:k], word[k:]


def split_many(word: MappingWord, cuts: Sequence[int]) -> list[MappingWord]:
    """Cut ``word`` at the strictly increasing interior positions ``cuts``."""
    bounds = [0, *cuts, len(word)]
    if any(b <= a for a, b in zip(bounds, bounds[1:])):
        raise BadSplit(f"cuts {list(cuts)} do not split a word of length {len(word)}")
    return [word[a:b] for a, b in zip(bounds, bounds[1:])]


# -- codec --------------------------------------------------------------------

class Codec:
    """Injective letter ↔ element table."""

    def __init__(self, mapping: dict[str, int]):
        inverse: dict[int, str] = {}
        for ch, v in mapping.items():
            if len(ch) != 1:
                raise ValueError(f"codec keys must be single characters, got {ch!r}")
            if v in inverse:
                raise ValueError(f"element {v} assigned to both {inverse[v]!r} and {ch!r}")
            inverse[v] = ch
        self.encode_map = dict(mapping)
        self.decode_map = inverse

    @classmethod
    def parse(cls, text: str) -> "Codec":
        mapping = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"codec line {n}: expected '<CHAR> <INDEX>'")
            mapping[parts[0]] = int(parts[1])
        return cls(mapping)

    @classmethod
    def load(cls, path) -> "Codec":
        return cls.parse(Path(path).read_text())

    def validate(self, L: FiniteLoop) -> None:
        for ch, v in self.encode_map.items():
            if not 1 <= v <= L.order:
                raise UnknownElement(f"codec maps {ch!r} to {v}, outside 1..{L.order}")

    def to_elements(self, text: str) -> list[int]:
        try:
            return [self.encode_map[ch] for ch in text]
        except KeyError as exc:
            raise UnknownLetter(f"letter {exc.args[0]!r} is not in the codec") from None

    def to_text(self, elements: Iterable[int]) -> str:
        try:
            return "".join(self.decode_map[v] for v in elements)
        except KeyError as exc:
            raise UnknownElement(f"element {exc.args[0]} is not in the codec") from None

    def letters(self) -> list[str]:
        return sorted(self.encode_map)

    def format(self) -> str:
        return "".join(f"{ch} {v}\n" for ch, v in sorted(self.encode_map.items()))


def default_codec() -> Codec:
    """B↔7, N↔9, O↔11, R↔12, S↔13."""
    return Codec.parse(resources.files("osborn.data").joinpath("osborn.map").read_text())


# -- enciphering --------------------------------------------------------------

def _apply(L: FiniteLoop, word: MappingWord, elements: Sequence[int]) -> list[int]:
    if not elements:
        return []
    return [int(v) + 1 for v in word.images(L, np.asarray(elements, dtype=np.intp) - 1)]


def encipher(L: FiniteLoop, codec: Codec, sfc: MappingWord, plaintext: str) -> list[int]:
    codec.validate(L)
    elements = codec.to_elements(plaintext)
    keys = {g.param for g in sfc}
    clash = sorted(set(elements) & keys)
    if clash:
        log.warning("message elements %s coincide with generator parameters", clash)
    return _apply(L, sfc, elements)


def decipher_elements(L: FiniteLoop, rfc: MappingWord, ciphertext: Sequence[int]) -> list[int]:
    for v in ciphertext:
        if not 1 <= v <= L.order:
            raise UnknownElement(f"ciphertext element {v} outside 1..{L.order}")
    return _apply(L, rfc, ciphertext)


def decipher(L: FiniteLoop, codec: Codec, rfc: MappingWord, ciphertext: Sequence[int]) -> str:
    return codec.to_text(decipher_elements(L, rfc, ciphertext))


def render(word: MappingWord, y: Element | str) -> str:
    """Infix expression for ``y`` pushed through ``word``.

    ``render([L(16), L(10)], 7) == '10(16·7)'``.
    """
    expr, atomic = str(y), True
    for g in word:
        a = g.param
        if g.kind == "L":
            expr = f"{a}·{expr}" if atomic else f"{a}({expr})"
        elif g.kind == "R":
            expr = f"{expr}·{a}" if atomic else f"({expr}){a}"
        elif g.kind == "Li":
            expr = f"{a}\\{expr}" if atomic else f"{a}\\({expr})"
        else:
            expr = f"{expr}/{a}" if atomic else f"({expr})/{a}"
        atomic = False
    return expr


@dataclass(frozen=True)
class CipherRow:
    letter: str
    plain: int
    enciphered: int
    deciphered: int
    enciphering: str
    deciphering: str


def cipher_table(L: FiniteLoop, codec: Codec, sfc: MappingWord, rfc: MappingWord,
                 letters: Iterable[str] | None = None) -> list[CipherRow]:
    """One row per letter: the enciphering and deciphering computations."""
    rows = []
    for ch in (codec.letters() if letters is None else letters):
        y = codec.to_elements(ch)[0]
        y1 = sfc.evaluate(L, y)
        y2 = rfc.evaluate(L, y1)
        rows.append(CipherRow(ch, y, y1, y2, f"{render(sfc, y)}={y1}", f"{render(rfc, y1)}={y2}"))
    return rows


def format_cipher_table(rows: Sequence[CipherRow]) -> str:
    out = ["LETTER\tENCIPHERING\tDECIPHERING\tDECODED LETTER"]
    for r in rows:
        out.append(f"{r.letter}\t{r.enciphering}\t{r.deciphering}\t{r.deciphered}")
    return "\n".join(out) + "\n"


# -- relay chains -------------------------------------------------------------

@dataclass(frozen=True)
class ChainConfig:
    components: tuple[MappingWord, ...]
    key: Element | None = None

    @classmethod
    def parse(cls, text: str, key: Element | None = None) -> "ChainConfig":
        """``'L:16|L:10|R:10|R:16'``: one word per terminal, separated by ``|``."""
        return cls(tuple(parse_word(part) for part in text.split("|")), key)

    @property
    def terminals(self) -> int:
        return len(self.components)

    @property
    def word(self) -> MappingWord:
        out = MappingWord()
        for c in self.components:
            out = out + c
        return out


@dataclass
class ChainTrace:
    plaintext: str
    elements: list[int]
    components: list[str]
    hops: list[list[int]] = field(default_factory=list)       # after F_1..F_i
    exposed: list[list[bool]] = field(default_factory=list)   # prefix fixes element

    def table(self) -> str:
        head = ["hop", "component"] + [f"{ch}" for ch in self.plaintext]
        lines = ["\t".join(head)]
        lines.append("\t".join(["0", "-"] + [str(v) for v in self.elements]))
        for i, (hop, exp) in enumerate(zip(self.hops, self.exposed), 1):
            cells = [f"{v}{'*' if e else ''}" for v, e in zip(hop, exp)]
            lines.append("\t".join([str(i), self.components[i - 1]] + cells))
        return "\n".join(lines) + "\n"


def chain_transmit(L: FiniteLoop, chain: ChainConfig, codec: Codec, plaintext: str) -> ChainTrace:
    """Push the message through each terminal's component in turn.

    Hop ``i`` is exposed for a message element when the prefix
    ``F_1 ... F_i`` fixes it, i.e. the in-transit value equals the plaintext.
    """
    codec.validate(L)
    full = chain.word
    for ch, v in sorted(codec.encode_map.items()):
        if full.evaluate(L, v) != v:
            raise BrokenChain(f"the composed functional moves {ch!r} ({v})")
    elements = codec.to_elements(plaintext)
    trace = ChainTrace(plaintext, elements, [str(c) or "I" for c in chain.components])
    current = list(elements)
    for comp in chain.components:
        current = _apply(L, comp, current)
        trace.hops.append(current)
        trace.exposed.append([a == b for a, b in zip(current, elements)])
    return trace

"""Decidable loop properties.

Every identity is checked exhaustively.  The checkers build a grid over the
whole quantifier space, evaluate both sides with numpy fancy indexing and,
on failure, report the lexicographically smallest violating tuple (1-based).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .loop import Element, FiniteLoop
from .mappings import MappingWord, Permutation


@dataclass(frozen=True)
class PropertyReport:
    name: str
    holds: bool
    witness: tuple[int, ...] | None = None
    vacuous: bool = False
    note: str = ""

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness is present exactly when the property fails")

    def __bool__(self) -> bool:
        return self.holds

    @property
    def status(self) -> str:
        if not self.holds:
            return "fails"
        return "vacuous" if self.vacuous else "holds"

    def line(self) -> str:
        """``<name> <holds|fails|vacuous> [witness: x,y,z]``"""
        s = f"{self.name} {self.status}"
        if self.witness is not None:
            s += " witness: " + ",".join(str(w) for w in self.witness)
        return s

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.note:
            d["note"] = self.note
        return d


class Ops:
    """Vectorised 0-based operations of one loop."""

    def __init__(self, L: FiniteLoop):
        self.L = L
        self.M = L.mul_table
        self.LD = L.ldiv_table
        self.RD = L.rdiv_table
        self.lam_t = L.lam_table
        self.rho_t = L.rho_table
        self.e = L.e0

    def m(self, a, b):
        return self.M[a, b]

    def ld(self, a, b):
        return self.LD[a, b]

    def rd(self, a, b):
        return self.RD[a, b]

    def lam(self, a):
        return self.lam_t[a]

    def rho(self, a):
        return self.rho_t[a]


def grid(n: int, arity: int) -> tuple[np.ndarray, ...]:
    return tuple(np.indices((n,) * arity, dtype=np.intp))


def first_violation(ok: np.ndarray) -> tuple[int, ...] | None:
    """1-based index of the first False entry in C order, or None."""
    if ok.all():
        return None
    flat = int(np.argmin(ok.ravel()))
    return tuple(int(i) + 1 for i in np.unravel_index(flat, ok.shape))


# An identity is (arity, fn) where fn(ops, *vars) -> boolean array that is True
# where the identity holds.  Variables are 0-based index arrays.
Identity = tuple[int, Callable[..., np.ndarray]]


def _os0(o: Ops, x, y, z):
    # x(yz·x) = x(yx^λ·x)·zx
    return o.m(x, o.m(o.m(y, z), x)) == o.m(o.m(x, o.m(o.m(y, o.lam(x)), x)), o.m(z, x))


def _os1(o: Ops, x, y, z):
    # yx·(zθ_y·y) = (y·xz)·y  with  zθ_y = y^λ(yz)
    zt = o.m(o.lam(y), o.m(y, z))
    return o.m(o.m(y, x), o.m(zt, y)) == o.m(o.m(y, o.m(x, z)), y)


def _os2(o: Ops, x, y, z):
    # x(yz·x) = (x^λ\y)·zx
    return o.m(x, o.m(o.m(y, z), x)) == o.m(o.ld(o.lam(x), y), o.m(z, x))


def _os3(o: Ops, x, y, z):
    # (x·yz)x = xy·(zE_x^{-1}·x)  with  E_x = R_x R_{x^ρ}
    ze = o.rd(o.rd(z, o.rho(x)), x)
    return o.m(o.m(x, o.m(y, z)), x) == o.m(o.m(x, y), o.m(ze, x))


OSBORN_VARIANTS: dict[str, Identity] = {
    "OS0": (3, _os0),
    "OS1": (3, _os1),
    "OS2": (3, _os2),
    "OS3": (3, _os3),
}


def _wip(o: Ops, x, y, z):
    return (o.m(o.m(x, y), z) != o.e) | (o.m(x, o.m(y, z)) == o.e)


def _cip(o: Ops, x, y):
    return o.m(o.m(x, y), o.rho(x)) == y


def _moufang(o: Ops, x, y, z):
    return o.m(o.m(x, y), o.m(z, x)) == o.m(o.m(x, o.m(y, z)), x)


def _cc(o: Ops, x, y, z):
    left = o.m(x, o.m(y, z)) == o.m(o.rd(o.m(x, y), x), o.m(x, z))
    right = o.m(o.m(z, y), x) == o.m(o.m(z, x), o.ld(x, o.m(y, x)))
    return left & right


def _assoc(o: Ops, x, y, z):
    return o.m(o.m(x, y), z) == o.m(x, o.m(y, z))


def _flexible(o: Ops, x, y):
    return o.m(o.m(x, y), x) == o.m(x, o.m(y, x))


def _lap(o: Ops, x, y):
    return o.m(x, o.m(x, y)) == o.m(o.m(x, x), y)


def _rap(o: Ops, x, y):
    return o.m(o.m(y, x), x) == o.m(y, o.m(x, x))


def _lip(o: Ops, x, y):
    return o.m(o.lam(x), o.m(x, y)) == y


def _rip(o: Ops, x, y):
    return o.m(o.m(y, x), o.rho(x)) == y


def _aaip(o: Ops, x, y):
    # J_ρ is an anti-automorphism; then so is J_λ = J_ρ^{-1}
    return o.rho(o.m(x, y)) == o.m(o.rho(y), o.rho(x))


def _pap3(o: Ops, x):
    return o.m(o.m(x, x), x) == o.m(x, o.m(x, x))


def _lsip(o: Ops, x):
    return o.m(o.lam(x), o.m(x, x)) == x


def _rsip(o: Ops, x):
    return o.m(o.m(x, x), o.rho(x)) == x


def _commutative(o: Ops, x, y):
    return o.m(x, y) == o.m(y, x)


def _exponent2(o: Ops, x):
    return o.m(x, x) == o.e


def _jl_eq_jr(o: Ops, x):
    return o.lam(x) == o.rho(x)


def closure(L: FiniteLoop, gens) -> np.ndarray:
    """Sorted 0-based elements of the subloop generated by ``gens``.

    For a finite loop, closure under multiplication is already a subloop.
    """
    M = L.mul_table
    have = np.zeros(L.order, dtype=bool)
    have[L.e0] = True
    have[np.asarray(list(gens), dtype=np.intp)] = True
    while True:
        s = np.flatnonzero(have)
        nxt = have.copy()
        nxt[M[np.ix_(s, s)].ravel()] = True
        if (nxt == have).all():
            return s
        have = nxt


def _power_assoc_at(L: FiniteLoop, x: int) -> bool:
    s = closure(L, [x])
    M = L.mul_table
    a, b, c = np.ix_(s, s, s)
    return bool((M[M[a, b], c] == M[a, M[b, c]]).all())


def _power_assoc(o: Ops, x):
    return np.vectorize(lambda i: _power_assoc_at(o.L, int(i)), otypes=[bool])(x)


def _vd_at(L: FiniteLoop, x: int) -> bool:
    # R_x^{-1}L_x in PS_λ with companion x, L_x^{-1}R_x in PS_ρ with companion x
    n = L.order
    z = np.arange(n)
    u = L.mul_table[x, L.rdiv_table[z, x]]
    v = L.mul_table[L.ldiv_table[x, z], x]
    return (_pseudo_ok(L, u, x, "left", "standard") and
            _pseudo_ok(L, v, x, "right", "standard"))


def _vd(o: Ops, x):
    return np.vectorize(lambda i: _vd_at(o.L, int(i)), otypes=[bool])(x)


IDENTITIES: dict[str, Identity] = {
    "os0": OSBORN_VARIANTS["OS0"],
    "os1": OSBORN_VARIANTS["OS1"],
    "os2": OSBORN_VARIANTS["OS2"],
    "os3": OSBORN_VARIANTS["OS3"],
    "wip": (3, _wip),
    "cip": (2, _cip),
    "moufang": (3, _moufang),
    "cc": (3, _cc),
    "associative": (3, _assoc),
    "flexible": (2, _flexible),
    "lap": (2, _lap),
    "rap": (2, _rap),
    "lip": (2, _lip),
    "rip": (2, _rip),
    "aaip": (2, _aaip),
    "3pap": (1, _pap3),
    "lsip": (1, _lsip),
    "rsip": (1, _rsip),
    "commutative": (2, _commutative),
    "exponent2": (1, _exponent2),
    "jl-eq-jr": (1, _jl_eq_jr),
    "power-associative": (1, _power_assoc),
    "vd": (1, _vd),
}

ALIASES = {
    "osborn": "os0",
    "group": "associative",
    "3-pap": "3pap",
    "3pal": "3pap",
    "powerassociative": "power-associative",
    "power_associative": "power-associative",
    "jl=jr": "jl-eq-jr",
}


def canonical_name(p: str) -> str:
    key = p.strip().lower()
    key = ALIASES.get(key, key)
    if key not in IDENTITIES:
        raise KeyError(f"unknown property {p!r}")
    return key


def check_identity(L: FiniteLoop, name: str, identity: Identity) -> PropertyReport:
    arity, fn = identity
    ok = fn(Ops(L), *grid(L.order, arity))
    return PropertyReport(name, True) if ok.all() else PropertyReport(name, False, first_violation(ok))


def holds_at(L: FiniteLoop, p: str, point: tuple[int, ...]) -> bool:
    """Evaluate property ``p`` at one 1-based tuple (for witness re-checks)."""
    arity, fn = IDENTITIES[canonical_name(p)]
    if len(point) != arity:
        raise ValueError(f"{p} takes {arity} variables, got {len(point)}")
    args = [np.intp(v - 1) for v in point]
    return bool(fn(Ops(L), *args))


def has_property(L: FiniteLoop, p: str) -> PropertyReport:
    key = canonical_name(p)
    return check_identity(L, key, IDENTITIES[key])


def is_osborn(L: FiniteLoop, variant: str = "OS0") -> PropertyReport:
    v = variant.upper()
    if v not in OSBORN_VARIANTS:
        raise KeyError(f"unknown Osborn variant {variant!r}")
    return check_identity(L, v, OSBORN_VARIANTS[v])


def is_group(L: FiniteLoop) -> bool:
    return has_property(L, "associative").holds


def is_abelian_group(L: FiniteLoop) -> bool:
    return is_group(L) and has_property(L, "commutative").holds


# -- pseudo-automorphisms ----------------------------------------------------

CONVENTIONS = ("standard", "mirrored")


def _autotopic(L: FiniteLoop, A, B, C) -> bool:
    M = L.mul_table
    return bool((M[A[:, None], B[None, :]] == C[M]).all())


def _pseudo_ok(L: FiniteLoop, u: np.ndarray, c: int, side: str, convention: str) -> bool:
    """``u``: 0-based images of the candidate; ``c``: 0-based companion."""
    uR = L.mul_table[u, c]   # u followed by R_c
    uL = L.mul_table[c, u]   # u followed by L_c
    if convention == "mirrored":
        side = "left" if side == "right" else "right"
    if side == "right":
        return _autotopic(L, u, uR, uR)
    if side == "left":
        return _autotopic(L, uL, u, uL)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def is_pseudo_automorphism(L: FiniteLoop, U: MappingWord | Permutation, c: Element,
                           side: str, convention: str = "standard") -> bool:
    """Right: ``(U, U R_c, U R_c)`` is an autotopism.  Left: ``(U L_c, U, U L_c)``.

    The ``mirrored`` convention swaps the two definitions.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    u = U.array if isinstance(U, Permutation) else U.images(L)
    return _pseudo_ok(L, np.asarray(u), c - 1, side, convention)


def inner_r_images(L: FiniteLoop) -> np.ndarray:
    """``out[x, y, z] = z R_(x,y)`` for all 0-based x, y, z."""
    o = Ops(L)
    x, y, z = grid(L.order, 3)
    return o.rd(o.m(o.m(z, x), y), o.m(x, y))


def inner_l_images(L: FiniteLoop) -> np.ndarray:
    """``out[x, y, z] = z L_(x,y)``."""
    o = Ops(L)
    x, y, z = grid(L.order, 3)
    return o.ld(o.m(y, x), o.m(y, o.m(x, z)))


def kinyon_companion(L: FiniteLoop, x: Element, y: Element) -> Element:
    """``(xy)^λ · (y^λ \\ x)``."""
    return L.mul(L.left_inverse(L.mul(x, y)), L.ldiv(L.left_inverse(y), x))


def check_r_inner_companion(L: FiniteLoop, convention: str = "standard") -> PropertyReport:
    """Each ``R_(x,y)`` is a right pseudo-automorphism with the companion above."""
    R = inner_r_images(L)
    for x in range(L.order):
        for y in range(L.order):
            c = kinyon_companion(L, x + 1, y + 1) - 1
            if not _pseudo_ok(L, R[x, y], c, "right", convention):
                return PropertyReport("r-inner-companion", False, (x + 1, y + 1),
                                      note=f"convention={convention}")
    return PropertyReport("r-inner-companion", True, note=f"convention={convention}")


def calibrate_convention(L: FiniteLoop) -> str:
    """Pick the pseudo-automorphism convention under which every right inner
    mapping of the Osborn loop ``L`` has the expected companion."""
    for conv in CONVENTIONS:
        if check_r_inner_companion(L, conv).holds:
            return conv
    raise ValueError("neither convention validates the inner-mapping companions on this loop")


# -- local sets --------------------------------------------------------------

@dataclass(frozen=True)
class LocalSets:
    n_lambda: frozenset[int]     # {z : zx·y = z·xy}
    n_rho: frozenset[int]        # {z : y·xz = yx·z}
    commutant: frozenset[int]    # C(x) = {y : xy = yx}
    nucleus: frozenset[int]
    centrum: frozenset[int]
    center: frozenset[int]
    left_nucleus: frozenset[int] = field(default=frozenset())
    middle_nucleus: frozenset[int] = field(default=frozenset())
    right_nucleus: frozenset[int] = field(default=frozenset())


def _set(mask: np.ndarray) -> frozenset[int]:
    return frozenset(int(i) + 1 for i in np.flatnonzero(mask))


def nuclei(L: FiniteLoop) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Left, middle and right nucleus."""
    o = Ops(L)
    a, x, y = grid(L.order, 3)
    left = (o.m(a, o.m(x, y)) == o.m(o.m(a, x), y)).all(axis=(1, 2))
    middle = (o.m(x, o.m(a, y)) == o.m(o.m(x, a), y)).all(axis=(1, 2))
    right = (o.m(o.m(x, y), a) == o.m(x, o.m(y, a))).all(axis=(1, 2))
    return _set(left), _set(middle), _set(right)


def nucleus(L: FiniteLoop) -> frozenset[int]:
    nl, nm, nr = nuclei(L)
    return nl & nm & nr


def centrum(L: FiniteLoop) -> frozenset[int]:
    M = L.mul_table
    return _set((M == M.T).all(axis=1))


def center(L: FiniteLoop) -> frozenset[int]:
    return nucleus(L) & centrum(L)


def local_sets(L: FiniteLoop, x: Element, y: Element) -> LocalSets:
    o = Ops(L)
    z = np.arange(L.order)
    i, j = x - 1, y - 1
    nl, nm, nr = nuclei(L)
    cen = centrum(L)
    return LocalSets(
        n_lambda=_set(o.m(o.m(z, i), j) == o.m(z, o.m(i, j))),
        n_rho=_set(o.m(j, o.m(i, z)) == o.m(o.m(j, i), z)),
        commutant=_set(o.m(i, z) == o.m(z, i)),
        nucleus=nl & nm & nr,
        centrum=cen,
        center=nl & nm & nr & cen,
        left_nucleus=nl,
        middle_nucleus=nm,
        right_nucleus=nr,
    )

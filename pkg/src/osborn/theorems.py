"""Checks of theorem conclusions on a concrete loop.

Each entry tests its hypothesis first.  When the hypothesis fails the entry
is reported ``vacuous`` (true, but not evidence of anything).
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .isotopy import (check_diagram, check_OSI, gamma_word, is_isomorphism, is_universal,
                      is_universal_osborn, phi, principal_isotope)
from .loop import FiniteLoop
from .properties import (CONVENTIONS, Ops, PropertyReport, _pseudo_ok, center,
                         check_r_inner_companion, has_property, inner_l_images,
                         inner_r_images, is_osborn, nucleus)


def _vacuous(name: str, why: str) -> PropertyReport:
    return PropertyReport(name, True, vacuous=True, note=why)


def _osborn(L: FiniteLoop) -> bool:
    return is_osborn(L, "OS0").holds


def r_inner_companion(L: FiniteLoop) -> PropertyReport:
    """``R_(x,y)`` is a right pseudo-automorphism with companion ``(xy)^λ(y^λ\\x)``.

    The standard convention is tried first, then the mirrored one; the report
    note records which one validated.
    """
    name = "r-inner-companion"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    first = None
    for conv in CONVENTIONS:
        r = check_r_inner_companion(L, conv)
        if r.holds:
            return PropertyReport(name, True, note=r.note)
        first = first or r
    return PropertyReport(name, False, first.witness, note="no convention validates")


def l_inner_pseudo(L: FiniteLoop) -> PropertyReport:
    """Each ``L_(x,y)`` is a left pseudo-automorphism for some companion."""
    name = "l-inner-pseudo"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    Li = inner_l_images(L)
    for x in range(L.order):
        for y in range(L.order):
            if not any(_pseudo_ok(L, Li[x, y], c, "left", "standard") for c in range(L.order)):
                return PropertyReport(name, False, (x + 1, y + 1))
    return PropertyReport(name, True)


def _lam_pairs(L: FiniteLoop):
    x, y = np.indices((L.order, L.order))
    return x, y, L.lam_table[x], L.lam_table[y]


def r_inner_inverse(L: FiniteLoop) -> PropertyReport:
    """``R_(x,y)^{-1} = L_(y^λ, x^λ)`` pointwise."""
    name = "r-inner-inverse"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    R = inner_r_images(L)
    Li = inner_l_images(L)
    x, y, xl, yl = _lam_pairs(L)
    # z R_(x,y) L_(y^λ,x^λ) must be z again
    back = Li[yl[..., None], xl[..., None], R]
    ok = (back == np.arange(L.order)).all(axis=2)
    if ok.all():
        return PropertyReport(name, True)
    i, j = np.argwhere(~ok)[0]
    return PropertyReport(name, False, (int(i) + 1, int(j) + 1))


def commutator_images(L: FiniteLoop, inverse: str = "lambda") -> np.ndarray:
    """``out[x, y, z] = z [L_w^{-1}, R_x^{-1}]`` with ``[A,B] = A^{-1}B^{-1}AB``
    and ``w = y^λ`` (or ``y^ρ`` when ``inverse='rho'``)."""
    o = Ops(L)
    x, y, z = np.indices((L.order,) * 3)
    w = o.lam(y) if inverse == "lambda" else o.rho(y)
    return o.rd(o.ld(w, o.m(o.m(w, z), x)), x)


def r_inner_commutator(L: FiniteLoop, inverse: str = "lambda") -> PropertyReport:
    name = "r-inner-commutator"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    R = inner_r_images(L)
    C = commutator_images(L, inverse)
    # C must undo R
    n = L.order
    x, y = np.indices((n, n))
    back = C[x[..., None], y[..., None], R]
    ok = (back == np.arange(n)).all(axis=2)
    if ok.all():
        return PropertyReport(name, True, note=f"w=y^{inverse}")
    i, j = np.argwhere(~ok)[0]
    return PropertyReport(name, False, (int(i) + 1, int(j) + 1), note=f"w=y^{inverse}")


def inner_groups_equal(L: FiniteLoop) -> PropertyReport:
    """Generator-level certificate that right and left inner mappings generate
    the same group: the inverse of every ``R_(x,y)`` is some ``L_(u,v)`` and
    the inverse of every ``L_(u,v)`` is some ``R_(x,y)``.

    The generating sets themselves need not coincide (they differ in some
    order-6 CC loops), so plain set equality would be too strong.
    """
    name = "inner-groups-equal"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    n = L.order
    R = inner_r_images(L).reshape(n * n, n)
    Li = inner_l_images(L).reshape(n * n, n)
    rset = {r.tobytes() for r in R}
    lset = {r.tobytes() for r in Li}
    for k, r in enumerate(R):
        if np.argsort(r).tobytes() not in lset:
            return PropertyReport(name, False, (k // n + 1, k % n + 1),
                                  note="R_(x,y)^-1 is not a left inner generator")
    for k, r in enumerate(Li):
        if np.argsort(r).tobytes() not in rset:
            return PropertyReport(name, False, (k // n + 1, k % n + 1),
                                  note="L_(x,y)^-1 is not a right inner generator")
    return PropertyReport(name, True)


def aum_middle_cube(L: FiniteLoop) -> PropertyReport:
    """If ``T_(a)`` is an automorphism then ``a·aa = aa·a ∈ N``; central ``a``
    have ``a·aa`` in the center."""
    name = "aum-middle-cube"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    M, LD = L.mul_table, L.ldiv_table
    e = L.e0
    N = nucleus(L)
    Z = center(L)
    from .properties import centrum

    C = centrum(L)
    z = np.arange(L.order)
    exercised = False
    for a in range(L.order):
        t = LD[a, M[z, a]]                      # z T_(a) = a\(za)
        if (M[t[:, None], t[None, :]] == t[M]).all():
            exercised |= a != e
            cube = int(M[a, M[a, a]])
            if cube != int(M[M[a, a], a]) or cube + 1 not in N:
                return PropertyReport(name, False, (a + 1,))
        if a + 1 in C:
            exercised |= a != e
            if int(M[a, M[a, a]]) + 1 not in Z:
                return PropertyReport(name, False, (a + 1,), note="centrum cube not central")
    if not exercised:
        return _vacuous(name, "only the identity meets the hypothesis")
    return PropertyReport(name, True)


def rho_square_order6(L: FiniteLoop) -> PropertyReport:
    """If ``(xx)^ρ = x^ρ x^ρ`` for all x then ``x^{ρ^6} = x``."""
    name = "rho-square-order6"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    M, rho = L.mul_table, L.rho_table
    z = np.arange(L.order)
    if not (rho[M[z, z]] == M[rho, rho]).all():
        return _vacuous(name, "(xx)^ρ = x^ρx^ρ fails")
    r6 = z
    for _ in range(6):
        r6 = rho[r6]
    bad = np.flatnonzero(r6 != z)
    if bad.size:
        return PropertyReport(name, False, (int(bad[0]) + 1,))
    return PropertyReport(name, True)


def wip_osborn_inverses(L: FiniteLoop) -> PropertyReport:
    """Seven identities in ``a = x^ρ x`` for WIP Osborn loops.

    ``a^{-1}`` is read as ``a^ρ``; the note records whether ``a^λ = a^ρ``
    held throughout, in which case the reading is unambiguous.
    """
    name = "wip-osborn-inverses"
    if not _osborn(L) or not has_property(L, "wip").holds:
        return _vacuous(name, "not a WIP Osborn loop")
    o = Ops(L)
    x = np.arange(L.order)
    a = o.m(o.rho(x), x)
    ai = o.rho(a)
    checks = [
        o.m(x, a) == o.lam(o.lam(x)),
        o.m(a, o.lam(x)) == o.rho(x),
        o.m(o.rho(x), a) == o.lam(x),
        o.m(a, x) == o.rho(o.rho(x)),
        o.m(x, ai) == o.m(a, x),
        o.m(ai, o.lam(x)) == o.m(o.lam(x), a),
        o.m(ai, o.rho(x)) == o.m(o.rho(x), a),
    ]
    ok = np.logical_and.reduce(checks)
    note = "a^-1 two-sided" if (o.lam(a) == ai).all() else "a^-1 read as a^rho"
    bad = np.flatnonzero(~ok)
    if bad.size:
        return PropertyReport(name, False, (int(bad[0]) + 1,), note=note)
    return PropertyReport(name, True, note=note)


_FORCING = ("flexible", "lap", "rap", "lip", "rip", "aaip")


def osborn_forces_moufang(L: FiniteLoop) -> PropertyReport:
    name = "osborn-forces-moufang"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    hit = [p for p in _FORCING if has_property(L, p).holds]
    comm = [p for p in ("commutative", "cip") if has_property(L, p).holds]
    if not hit and not comm:
        return _vacuous(name, "none of the forcing properties hold")
    mouf = has_property(L, "moufang")
    if not mouf.holds:
        return PropertyReport(name, False, mouf.witness, note="forced by " + ",".join(hit + comm))
    if comm:
        c = has_property(L, "commutative")
        if not c.holds:
            return PropertyReport(name, False, c.witness, note="not commutative")
    return PropertyReport(name, True, note=",".join(hit + comm))


def exponent2_abelian(L: FiniteLoop) -> PropertyReport:
    name = "exponent2-abelian"
    if not _osborn(L) or not has_property(L, "exponent2").holds:
        return _vacuous(name, "not an Osborn loop of exponent 2")
    for p in ("associative", "commutative"):
        r = has_property(L, p)
        if not r.holds:
            return PropertyReport(name, False, r.witness, note=p)
    return PropertyReport(name, True)


def wip_universality(L: FiniteLoop) -> PropertyReport:
    """For a WIP loop: every principal isotope is WIP iff the loop is Osborn."""
    name = "wip-universality"
    if not has_property(L, "wip").holds:
        return _vacuous(name, "not a WIP loop")
    universal = is_universal(L, lambda M: has_property(M, "wip"), "universal-wip")
    osb = is_osborn(L, "OS1")
    if universal.holds != osb.holds:
        w = universal.witness if not universal.holds else osb.witness
        return PropertyReport(name, False, w,
                              note=f"universal-wip={universal.holds} osborn={osb.holds}")
    return PropertyReport(name, True, note=f"osborn={osb.holds}")


def diagram_universality(L: FiniteLoop) -> PropertyReport:
    """For an Osborn loop: the isotopy triangle commutes everywhere iff the loop
    is universal Osborn."""
    name = "diagram-universality"
    if not _osborn(L):
        return _vacuous(name, "not an Osborn loop")
    d = check_diagram(L)
    u = is_universal_osborn(L)
    if d.holds != u.holds:
        return PropertyReport(name, False, d.witness or u.witness,
                              note=f"diagram={d.holds} universal={u.holds}")
    return PropertyReport(name, True, note=f"universal={u.holds}")


def universal_identities(L: FiniteLoop) -> PropertyReport:
    name = "universal-identities"
    if not is_universal_osborn(L).holds:
        return _vacuous(name, "not a universal Osborn loop")
    for which in ("OSI01", "OSI011", "DLIP"):
        r = check_OSI(L, which)
        if not r.holds:
            return PropertyReport(name, False, r.witness, note=which)
    return PropertyReport(name, True)


def bryant_schneider(L: FiniteLoop) -> PropertyReport:
    """With ``θ = γ(x,u,v)^{-1}`` and ``(a,b,c,d) = (x,v,u,φ(x,u,v))`` both
    displayed equalities hold for every ``f, g``."""
    name = "bryant-schneider"
    n = L.order
    M, LD, RD = L.mul_table, L.ldiv_table, L.rdiv_table
    fg = np.arange(n)
    exercised = False
    for x in L.elements:
        for u in L.elements:
            for v in L.elements:
                d = phi(L, x, u, v)
                gamma = gamma_word(L, x, u, v).permutation(L)
                theta = gamma.inverse()
                if not is_isomorphism(principal_isotope(L, x, v), principal_isotope(L, u, d), theta):
                    continue
                exercised = True
                th, thi = theta.array, gamma.array
                a, b, c, d0 = x - 1, v - 1, u - 1, d - 1
                f1 = RD[th[M[fg, b]], d0]
                f2 = th[M[fg, LD[a, thi[c]]]]
                g1 = LD[c, th[M[a, fg]]]
                g2 = th[M[RD[thi[d0], b], fg]]
                bad = np.flatnonzero((f1 != f2) | (g1 != g2))
                if bad.size:
                    return PropertyReport(name, False, (x, u, v, int(bad[0]) + 1),
                                          note="last witness entry is the failing f (or g)")
    if not exercised:
        return _vacuous(name, "γ^{-1} is never an isomorphism of the isotopes")
    return PropertyReport(name, True)


CATALOGUE: dict[str, Callable[[FiniteLoop], PropertyReport]] = {
    "r-inner-companion": r_inner_companion,
    "l-inner-pseudo": l_inner_pseudo,
    "r-inner-inverse": r_inner_inverse,
    "r-inner-commutator": r_inner_commutator,
    "inner-groups-equal": inner_groups_equal,
    "aum-middle-cube": aum_middle_cube,
    "rho-square-order6": rho_square_order6,
    "wip-osborn-inverses": wip_osborn_inverses,
    "osborn-forces-moufang": osborn_forces_moufang,
    "exponent2-abelian": exponent2_abelian,
    "wip-universality": wip_universality,
    "diagram-universality": diagram_universality,
    "universal-identities": universal_identities,
    "bryant-schneider": bryant_schneider,
}


def verify_theorem(L: FiniteLoop, which: str) -> PropertyReport:
    try:
        fn = CATALOGUE[which]
    except KeyError:
        raise KeyError(f"unknown theorem {which!r}; choose from {', '.join(CATALOGUE)}") from None
    return fn(L)

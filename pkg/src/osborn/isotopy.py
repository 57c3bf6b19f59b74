"""Principal isotopes, autotopisms and the universal-Osborn machinery."""
from __future__ import annotations

import random
from typing import NamedTuple

import numpy as np

from .loop import Element, FiniteLoop
from .mappings import MappingWord, Permutation
from .properties import OSBORN_VARIANTS, Ops, PropertyReport, first_violation, grid


class OrderMismatch(ValueError):
    pass


class PremiseFails(ValueError):
    """The map handed to a theorem check does not satisfy its hypothesis."""


def principal_isotope(L: FiniteLoop, f: Element, g: Element) -> FiniteLoop:
    """The loop ``x∘y = (x/g)·(f\\y)``; its identity is ``f·g``."""
    z = np.arange(L.order)
    t = L.mul_table[L.rdiv_table[z, g - 1][:, None], L.ldiv_table[f - 1, z][None, :]]
    return FiniteLoop.from_zero_based(t, name=f"{L.name}[{f},{g}]" if L.name else "")


class IsotopismTriple(NamedTuple):
    A: Permutation
    B: Permutation
    C: Permutation


def _as_perm(L: FiniteLoop, m) -> Permutation:
    return m if isinstance(m, Permutation) else m.permutation(L)


def is_isotopism(L1: FiniteLoop, L2: FiniteLoop, t) -> bool:
    """``xA ∘ yB = (x·y)C`` for all x, y, with ``·`` from L1 and ``∘`` from L2.

    Components may be Permutations or MappingWords (words over L1).
    """
    A, B, C = (_as_perm(L1, m) for m in t)
    if not (L1.order == L2.order == A.order == B.order == C.order):
        raise OrderMismatch("isotopism components and loops must share one order")
    lhs = L2.mul_table[A.array[:, None], B.array[None, :]]
    return bool((lhs == C.array[L1.mul_table]).all())


def is_autotopism(L: FiniteLoop, t) -> bool:
    return is_isotopism(L, L, t)


def is_isomorphism(L1: FiniteLoop, L2: FiniteLoop, theta: Permutation) -> bool:
    return is_isotopism(L1, L2, (theta, theta, theta))


# -- the diagram ------------------------------------------------------------

def phi(L: FiniteLoop, x: Element, u: Element, v: Element) -> Element:
    """``u \\ ([(uv) / (u\\(xv))] v)``."""
    w = L.ldiv(u, L.mul(x, v))
    return L.ldiv(u, L.mul(L.rdiv(L.mul(u, v), w), v))


def gamma_word(L: FiniteLoop, x: Element, u: Element, v: Element) -> MappingWord:
    """``R_v^{-1} R_{u\\(xv)} L_u^{-1} L_x``."""
    w = L.ldiv(u, L.mul(x, v))
    return MappingWord([("Ri", v), ("R", w), ("Li", u), ("L", x)])


def verify_diagram(L: FiniteLoop, x: Element, u: Element, v: Element) -> bool:
    """Does the triangle of isotopisms commute at ``(x, u, v)``?

    The triangle commutes exactly when ``γ`` is an isomorphism from the
    ``(u, φ)``-principal isotope onto the ``(x, v)``-principal isotope; the
    composite is then the autotopism ``(R_φ γ R_v^{-1}, L_u γ L_x^{-1}, γ)``.
    Both formulations are evaluated and must agree.
    """
    p = phi(L, x, u, v)
    gamma = gamma_word(L, x, u, v)
    iso = is_isomorphism(principal_isotope(L, u, p), principal_isotope(L, x, v),
                         gamma.permutation(L))
    alpha = MappingWord([("R", p)]) + gamma + MappingWord([("Ri", v)])
    beta = MappingWord([("L", u)]) + gamma + MappingWord([("Li", x)])
    auto = is_autotopism(L, (alpha, beta, gamma))
    if iso != auto:
        raise AssertionError(f"diagram formulations disagree at {(x, u, v)}")
    return iso


def check_diagram(L: FiniteLoop) -> PropertyReport:
    for x in L.elements:
        for u in L.elements:
            for v in L.elements:
                if not verify_diagram(L, x, u, v):
                    return PropertyReport("diagram", False, (x, u, v))
    return PropertyReport("diagram", True)


# -- universality -------------------------------------------------------------

def is_universal(L: FiniteLoop, check, name: str) -> PropertyReport:
    """Apply ``check(isotope) -> PropertyReport`` to every principal isotope.

    The witness is ``(f, g) + inner witness`` for the first failing pair.
    """
    for f in L.elements:
        for g in L.elements:
            r = check(principal_isotope(L, f, g))
            if not r.holds:
                return PropertyReport(name, False, (f, g) + tuple(r.witness))
    return PropertyReport(name, True)


def is_universal_osborn(L: FiniteLoop, variant: str = "OS0") -> PropertyReport:
    from .properties import is_osborn

    return is_universal(L, lambda iso: is_osborn(iso, variant), "universal-osborn")


def _os0_prime(o: Ops, x, y, z, u, v):
    w = o.ld(u, o.m(x, v))
    lhs = o.m(x, o.ld(u, o.m(o.rd(o.m(y, z), v), w)))
    ph = o.ld(u, o.m(o.rd(o.m(u, v), w), v))
    inner = o.m(x, o.ld(u, o.m(o.rd(o.m(y, ph), v), w)))
    rhs = o.m(o.rd(inner, v), o.ld(u, o.m(o.rd(o.m(u, z), v), w)))
    return lhs == rhs


def check_OS0_prime(L: FiniteLoop) -> PropertyReport:
    """The five-variable identity equivalent to OS0 in every principal isotope.

    Witness order is ``(x, y, z, u, v)``.  The space is processed one ``x``
    slice at a time to bound memory.
    """
    o = Ops(L)
    n = L.order
    _, y, z, u, v = grid(n, 5)
    y, z, u, v = y[0], z[0], u[0], v[0]
    for x in range(n):
        ok = _os0_prime(o, np.intp(x), y, z, u, v)
        if not ok.all():
            return PropertyReport("os0-prime", False, (x + 1,) + first_violation(ok))
    return PropertyReport("os0-prime", True)


def _osi01(o: Ops, x, z, u, v):
    w = o.ld(u, o.m(x, v))
    lhs = o.m(o.rd(o.m(u, o.ld(x, o.m(z, v))), w), v)
    ph = o.ld(u, o.m(o.rd(o.m(u, v), w), v))
    inner = o.m(u, o.ld(x, o.m(z, o.ld(u, o.m(o.rd(u, v), w)))))
    rhs = o.m(o.m(o.rd(inner, w), v), ph)
    return lhs == rhs


def _osi011(o: Ops, x, z):
    # z = x·{[x\(zx)]/x · x^λ}x
    return z == o.m(x, o.m(o.m(o.rd(o.ld(x, o.m(z, x)), x), o.lam(x)), x))


def _dlip(o: Ops, x, y):
    # (x^λ·xy)x^λ·x = y
    return o.m(o.m(o.m(o.lam(x), o.m(x, y)), o.lam(x)), x) == y


OSI_IDENTITIES = {
    "OSI01": (4, _osi01),
    "OSI011": (2, _osi011),
    "DLIP": (2, _dlip),
}


def check_OSI(L: FiniteLoop, which: str) -> PropertyReport:
    """Witness order: OSI01 ``(x, z, u, v)``; OSI011 ``(x, z)``; DLIP ``(x, y)``."""
    key = which.upper().replace(".", "").replace("_", "")
    if key not in OSI_IDENTITIES:
        raise KeyError(f"unknown identity {which!r}")
    arity, fn = OSI_IDENTITIES[key]
    ok = fn(Ops(L), *grid(L.order, arity))
    return PropertyReport(key, True) if ok.all() else PropertyReport(key, False, first_violation(ok))


# -- Bryant-Schneider ---------------------------------------------------------

def bryant_schneider_check(L: FiniteLoop, a: Element, b: Element, c: Element, d: Element,
                           f: Element, g: Element, theta: Permutation) -> bool:
    """Given an isomorphism ``θ: Q(a,b) → Q(c,d)`` of principal isotopes,
    check it is also an isomorphism ``Q(f,g) → Q(f', g')`` where

        ``f' = (f·b)θ / d = [f·(a\\cθ^{-1})]θ``
        ``g' = c \\ (a·g)θ = [(dθ^{-1}/b)·g]θ``

    and that both displayed equalities hold.  ``Q(p,q)`` denotes
    :func:`principal_isotope` ``(L, p, q)``.
    """
    if not is_isomorphism(principal_isotope(L, a, b), principal_isotope(L, c, d), theta):
        raise PremiseFails("theta is not an isomorphism Q(a,b) -> Q(c,d)")
    th, thi = theta, theta.inverse()
    f1 = L.rdiv(th(L.mul(f, b)), d)
    f2 = th(L.mul(f, L.ldiv(a, thi(c))))
    g1 = L.ldiv(c, th(L.mul(a, g)))
    g2 = th(L.mul(L.rdiv(thi(d), b), g))
    if f1 != f2 or g1 != g2:
        return False
    return is_isomorphism(principal_isotope(L, f, g), principal_isotope(L, f1, g1), theta)


# -- isomorphism search -------------------------------------------------------

def _fingerprints(L: FiniteLoop) -> list[tuple]:
    M, lam, rho, e = L.mul_table, L.lam_table, L.rho_table, L.e0
    out = []
    for x in range(L.order):
        # tail length and cycle length of x, x², (x²)², ...
        seq = {}
        y, k = x, 0
        while y not in seq:
            seq[y] = k
            y = int(M[y, y])
            k += 1
        out.append((
            seq[y], k - seq[y],
            lam[x] == rho[x], x == rho[x], int(M[x, x]) == e,
            len(closure_of(L, x)),
            int(np.count_nonzero(M[x] == M[:, x])),
        ))
    return out


def closure_of(L: FiniteLoop, x: int) -> np.ndarray:
    from .properties import closure

    return closure(L, [x])


def _generating_set(L: FiniteLoop) -> list[int]:
    """A small generating set (0-based), chosen greedily."""
    from .properties import closure

    gens: list[int] = []
    have = closure(L, [])
    while have.size < L.order:
        best, best_size = None, -1
        for x in range(L.order):
            if x in have:
                continue
            size = closure(L, gens + [x]).size
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        have = closure(L, gens)
    return gens


def _extend(M1, M2, assign: dict[int, int], used: set[int]) -> dict[int, int] | None:
    """Propagate ``σ(a·b) = σ(a)σ(b)`` to closure; None on conflict."""
    sigma = dict(assign)
    used = set(used)
    frontier = list(sigma)
    while frontier:
        new = []
        keys = list(sigma)
        for p in frontier:
            for q in keys:
                for a, b in ((p, q), (q, p)):
                    s = int(M1[a, b])
                    t = int(M2[sigma[a], sigma[b]])
                    if s in sigma:
                        if sigma[s] != t:
                            return None
                    elif t in used:
                        return None
                    else:
                        sigma[s] = t
                        used.add(t)
                        new.append(s)
                        keys.append(s)
        frontier = new
    return sigma


def find_isomorphism(L1: FiniteLoop, L2: FiniteLoop) -> Permutation | None:
    """Return ``θ`` with ``xθ·yθ = (xy)θ``, or None when the loops are not isomorphic."""
    if L1.order != L2.order:
        raise OrderMismatch("loops of different orders")
    n = L1.order
    fp1, fp2 = _fingerprints(L1), _fingerprints(L2)
    if sorted(fp1) != sorted(fp2):
        return None
    gens = _generating_set(L1)
    cands = [[y for y in range(n) if fp2[y] == fp1[g]] for g in gens]
    M1, M2 = L1.mul_table, L2.mul_table

    def search(i: int, sigma: dict[int, int]) -> dict[int, int] | None:
        if i == len(gens):
            return sigma if len(sigma) == n else None
        g = gens[i]
        if g in sigma:
            return search(i + 1, sigma)
        used = set(sigma.values())
        for y in cands[i]:
            if y in used:
                continue
            ext = _extend(M1, M2, {**sigma, g: y}, used | {y})
            if ext is not None:
                done = search(i + 1, ext)
                if done is not None:
                    return done
        return None

    sigma = search(0, _extend(M1, M2, {L1.e0: L2.e0}, {L2.e0}) or {})
    if sigma is None:
        return None
    theta = Permutation([sigma[i] for i in range(n)], zero_based=True)
    # closure propagation guarantees this; kept as a cheap certificate
    assert is_isomorphism(L1, L2, theta)
    return theta


def is_g_loop(L: FiniteLoop, samples: int = 16, seed: int = 0,
              exhaustive: bool = False) -> PropertyReport:
    """Is ``L`` isomorphic to its principal isotopes?  Sampled by default."""
    pairs = [(f, g) for f in L.elements for g in L.elements]
    if not exhaustive:
        pairs = random.Random(seed).sample(pairs, min(samples, len(pairs)))
    for f, g in pairs:
        if find_isomorphism(L, principal_isotope(L, f, g)) is None:
            return PropertyReport("g-loop", False, (f, g))
    note = "exhaustive" if exhaustive else f"sampled {len(pairs)} isotopes, seed={seed}"
    return PropertyReport("g-loop", True, note=note)

"""Buchberger's algorithm with reduced bases, elimination and saturation.

All computations are over Q with exact coefficients.  The S-polynomial loop
is capped by a work budget (number of S-polynomial reductions); hitting the
cap raises BudgetExceeded, which marks the instance as beyond desk scale.
Reduced Groebner bases are unique for a fixed order, so every routine here
is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BudgetExceeded
from .polynomials import GREVLEX, EliminationOrder, Monomial, MonomialOrder, Poly

DEFAULT_BUDGET = 50_000


def _mon_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mon_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mon_sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    lcm = _mon_lcm(fm, gm)
    return f.mul_monomial(_mon_sub(lcm, fm), 1 / fc) \
        - g.mul_monomial(_mon_sub(lcm, gm), 1 / gc)


def normal_form(f: Poly, basis, order: MonomialOrder) -> Poly:
    """Full remainder of f on division by the basis (deterministic divisor pick)."""
    if f.is_zero or not basis:
        return f
    leads = [g.leading(order) for g in basis]
    rem_terms = {}
    work = f
    while not work.is_zero:
        mon, coeff = work.leading(order)
        for g, (gm, gc) in zip(basis, leads):
            if _mon_divides(gm, mon):
                work = work - g.mul_monomial(_mon_sub(mon, gm), coeff / gc)
                break
        else:
            rem_terms[mon] = coeff
            work = work - Poly.monomial(work.nvars, mon, coeff)
    return Poly(f.nvars, rem_terms)


def buchberger(generators, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET):
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Returns a tuple of monic polynomials sorted by increasing leading
    monomial.  Raises BudgetExceeded when the number of S-polynomial
    reductions passes ``budget``.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        return ()
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators in different rings")
    if any(g.has_negative_exponents() for g in gens):
        raise ValueError("Groebner input must have nonnegative exponents")
    G = []
    for g in gens:
        g = normal_form(g, G, order)
        if not g.is_zero:
            G.append(g.monic(order))
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    work = 0
    while pairs:
        pair = min(pairs, key=lambda p: (order.key(
            _mon_lcm(G[p[0]].leading(order)[0], G[p[1]].leading(order)[0])), p))
        pairs.discard(pair)
        i, j = pair
        fm = G[i].leading(order)[0]
        gm = G[j].leading(order)[0]
        if _mon_lcm(fm, gm) == tuple(a + b for a, b in zip(fm, gm)):
            continue  # coprime leading monomials
        work += 1
        if work > budget:
            raise BudgetExceeded("S-polynomial budget exhausted", count=work)
        s = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if s.is_zero:
            continue
        s = s.monic(order)
        G.append(s)
        k = len(G) - 1
        pairs.update((i2, k) for i2 in range(k))
    return _reduce_basis(G, order)


def _reduce_basis(G, order: MonomialOrder):
    # minimalize: drop polynomials whose leading monomial is divisible by another's
    leads = [g.leading(order)[0] for g in G]
    keep = []
    for i, lm in enumerate(leads):
        if any(j != i and _mon_divides(leads[j], lm)
               and (leads[j] != lm or j < i) for j in range(len(G))):
            continue
        keep.append(G[i])
    # interreduce tails
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1:]
            nf = normal_form(keep[i], others, order)
            if nf.is_zero:
                keep.pop(i)
                changed = True
                break
            nf = nf.monic(order)
            if nf != keep[i]:
                keep[i] = nf
                changed = True
    keep.sort(key=lambda g: order.key(g.leading(order)[0]))
    return tuple(keep)


def ideal_contains_one(basis) -> bool:
    return len(basis) == 1 and basis[0].is_constant and not basis[0].is_zero


def eliminate(generators, nfirst: int, budget: int = DEFAULT_BUDGET):
    """Generators of the elimination ideal dropping the first ``nfirst`` vars.

    The result is the reduced Groebner basis of I ∩ Q[x_{nfirst}..] reindexed
    to the smaller ring, under grevlex.
    """
    if not generators:
        return ()
    nvars = generators[0].nvars
    basis = buchberger(generators, EliminationOrder(nfirst), budget)
    kept = []
    mapping = {i: i - nfirst for i in range(nfirst, nvars)}
    for g in basis:
        support = g.vars_present()
        if all(v >= nfirst for v in support):
            kept.append(g.reindex(nvars - nfirst, {**{i: 0 for i in range(nfirst)},
                                                   **mapping}))
    return buchberger(kept, GREVLEX, budget) if kept else ()


def saturate(generators, budget: int = DEFAULT_BUDGET):
    """Reduced grevlex basis of I : (x1...xn)^inf via one auxiliary variable."""
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        return ()
    nvars = gens[0].nvars
    big = nvars + 1
    shifted = [g.reindex(big, {i: i + 1 for i in range(nvars)}) for g in gens]
    relation_terms = {tuple([1] + [1] * nvars): Fraction(1),
                      tuple([0] * big): Fraction(-1)}
    shifted.append(Poly(big, relation_terms))
    return eliminate(shifted, 1, budget)

"""Laurent-polynomial ideals on the torus: dimension, quotients, torsion cosets.

A variety W inside the torus (F*)^k is presented by Laurent generators with
rational coefficients.  Internally every computation runs on the saturation
of the cleared polynomial ideal at the product of the variables, so results
always refer to the torus part of the zero set.

Subtori are binomial subgroups y^{m_i} = 1 for integer rows m_i; quotients
by a subtorus are computed by elimination along the monomial map whose
components are a basis of the saturated character lattice.  Exact points may
be rational or pure torsion (coordinates that are roots of unity of bounded
order, handled through an auxiliary cyclotomic variable).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import BudgetExceeded, EmptyVariety, NotOnVariety
from .groebner import (DEFAULT_BUDGET, EliminationOrder, buchberger,
                       ideal_contains_one, normal_form, saturate)
from .polynomials import GREVLEX, MonomialOrder, Poly
from .subspaces import QLinearSubspace, quotient_characters


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentIdeal:
    """Ideal of Laurent polynomials; the zero ideal is the single generator 0."""

    nvars: int
    generators: tuple[Poly, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("generator list must be nonempty (use the zero poly)")
        for g in self.generators:
            if g.nvars != self.nvars:
                raise ValueError("generator in wrong ring")

    @classmethod
    def make(cls, nvars, generators) -> "LaurentIdeal":
        gens = tuple(generators) or (Poly.zero(nvars),)
        return cls(nvars, gens if gens else (Poly.zero(nvars),))

    @classmethod
    def zero_ideal(cls, nvars) -> "LaurentIdeal":
        return cls(nvars, (Poly.zero(nvars),))

    def cleared_generators(self) -> list[Poly]:
        """Generators scaled by monomials to nonnegative exponents, normalized."""
        out = []
        seen = set()
        for g in self.generators:
            if g.is_zero:
                continue
            mins = [0] * self.nvars
            for mon in g.terms:
                for i, e in enumerate(mon):
                    if e < mins[i]:
                        mins[i] = e
            if any(mins):
                g = g.mul_monomial(tuple(-v for v in mins))
            _, g = g.normalized()
            if g not in seen:
                seen.add(g)
                out.append(g)
        return out

    def is_zero_ideal(self) -> bool:
        return all(g.is_zero for g in self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    nvars: int
    order_name: str
    polys: tuple[Poly, ...]


@dataclass(frozen=True)
class SubtorusSpec:
    """The subgroup {y : y^{m_i} = 1} for primitive integer rows m_i."""

    n: int
    lattice_rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        from .exact_linalg import q_rank
        rows = tuple(tuple(int(v) for v in r) for r in self.lattice_rows)
        object.__setattr__(self, "lattice_rows", rows)
        for r in rows:
            g = 0
            for v in r:
                g = _int_gcd(g, v)
            if g != 1:
                raise ValueError("lattice rows must be primitive")
        if rows and q_rank(list(rows)) != len(rows):
            raise ValueError("lattice rows must be independent")

    @property
    def dim(self) -> int:
        return self.n - len(self.lattice_rows)

    def binomial_generators(self) -> list[Poly]:
        return [_binomial(self.n, row) for row in self.lattice_rows]


@dataclass(frozen=True)
class TorsionPoint:
    """Coordinates (zeta^e_1, ..., zeta^e_n) for zeta a primitive order-th root."""

    n: int
    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        fracs = [Fraction(e % self.order, self.order) for e in self.exponents]
        order = 1
        for f in fracs:
            order = order * f.denominator // _int_gcd(order, f.denominator)
        exps = tuple(int(f * order) for f in fracs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponents", exps)

    def char_value(self, row) -> Fraction:
        """y^row as the fraction of a full turn, reduced to lowest terms."""
        total = sum(int(m) * e for m, e in zip(row, self.exponents))
        return Fraction(total % self.order, self.order)


def _binomial(nvars, row, turn: Fraction | None = None, zvar=None):
    """y^{row+} - c y^{row-} as a polynomial; c = z^idx when a turn is given."""
    pos = tuple(max(v, 0) for v in row)
    neg = tuple(max(-v, 0) for v in row)
    if turn is None:
        return Poly(nvars, {pos: Fraction(1), neg: Fraction(-1)})
    k = turn.denominator
    idx = turn.numerator % k
    if zvar is None:
        # rational value: turn must be 0 or 1/2
        value = Fraction(1) if turn == 0 else Fraction(-1)
        return Poly(nvars, {pos: Fraction(1), neg: -value})
    pos_full = pos + (0,)
    neg_full = neg + (idx,)
    return Poly(nvars, {pos_full: Fraction(1), neg_full: Fraction(-1)})


# ---------------------------------------------------------------------------
# Cyclotomic helpers (dense univariate over Q)
# ---------------------------------------------------------------------------

_CYCLO_CACHE: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_coeffs(k: int) -> tuple[Fraction, ...]:
    """Dense coefficient tuple (low degree first) of the k-th cyclotomic polynomial."""
    if k in _CYCLO_CACHE:
        return _CYCLO_CACHE[k]
    xk = [Fraction(-1)] + [Fraction(0)] * (k - 1) + [Fraction(1)]
    quo = xk
    for d in range(1, k):
        if k % d == 0:
            quo = _dense_divexact(quo, list(cyclotomic_coeffs(d)))
    result = tuple(quo)
    _CYCLO_CACHE[k] = result
    return result


def _dense_divexact(num, den):
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact dense division")
    return out


def _dense_rem(num, den):
    num = list(num)
    dn = len(den) - 1
    while len(num) - 1 >= dn:
        c = num[-1] / den[-1]
        if c:
            for j, d in enumerate(den):
                num[len(num) - 1 - dn + j] -= c * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
        if not num:
            break
    return num


def _cyclo_poly(nvars_total: int, k: int) -> Poly:
    """Phi_k in the last variable of a ring with nvars_total variables."""
    coeffs = cyclotomic_coeffs(k)
    terms = {}
    for d, c in enumerate(coeffs):
        if c:
            mon = [0] * nvars_total
            mon[-1] = d
            terms[tuple(mon)] = c
    return Poly(nvars_total, terms)


# ---------------------------------------------------------------------------
# Core computations
# ---------------------------------------------------------------------------

_SAT_CACHE: dict[LaurentIdeal, tuple[Poly, ...]] = {}
_GB_CACHE: dict[tuple[LaurentIdeal, str], GroebnerBasis] = {}


def saturated_basis(I: LaurentIdeal, budget: int = DEFAULT_BUDGET) -> tuple[Poly, ...]:
    """Reduced grevlex basis of the torus-saturated ideal (cached)."""
    hit = _SAT_CACHE.get(I)
    if hit is not None:
        return hit
    basis = saturate(I.cleared_generators(), budget)
    _SAT_CACHE[I] = basis
    return basis


def buchberger_basis(I: LaurentIdeal, order: MonomialOrder = GREVLEX,
                     budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the saturated internal ideal."""
    key = (I, order.name)
    hit = _GB_CACHE.get(key)
    if hit is not None:
        return hit
    sat = saturated_basis(I, budget)
    polys = buchberger(sat, order, budget) if order != GREVLEX else sat
    gb = GroebnerBasis(I.nvars, order.name, tuple(polys))
    _GB_CACHE[key] = gb
    return gb


def _staircase_dim(basis, nvars: int) -> int:
    """Krull dimension from leading monomials: max independent variable set."""
    if not basis:
        return nvars
    supports = []
    for g in basis:
        mon, _ = g.leading(GREVLEX)
        supports.append(frozenset(i for i, e in enumerate(mon) if e))
    from itertools import combinations
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            sset = set(S)
            if all(not sup <= sset for sup in supports):
                return size
    return 0


def dim_variety(I: LaurentIdeal, budget: int = DEFAULT_BUDGET):
    """Dimension of the torus part of V(I); None when it is empty."""
    basis = saturated_basis(I, budget)
    if ideal_contains_one(basis):
        return None
    return _staircase_dim(basis, I.nvars)


def specialize(I: LaurentIdeal, values) -> LaurentIdeal:
    """Substitute exact nonzero values for the trailing variables."""
    values = [Fraction(v) for v in values]
    if any(v == 0 for v in values):
        raise ValueError("specialization values must be nonzero")
    l = len(values)
    n = I.nvars - l
    if n < 0:
        raise ValueError("more values than variables")
    subst = [None] * n + values
    gens = [g.eval_partial(subst) for g in I.generators]
    return LaurentIdeal.make(n, [g for g in gens if not g.is_zero] or [Poly.zero(n)])


def torus_of(M: QLinearSubspace) -> SubtorusSpec:
    """exp(M) as the binomial subgroup cut out by M's defining rows."""
    return SubtorusSpec(M.n, M.matrix.int_rows())


def quotient_by_subtorus(W: LaurentIdeal, M: QLinearSubspace,
                         budget: int = DEFAULT_BUDGET) -> LaurentIdeal:
    """Closure of the image of V(W) in the quotient torus by exp(M).

    M lives on the first M.n coordinates of W's ring; trailing coordinates
    (parameters) pass through.  Quotient coordinates are u_i = y^{s_i} for
    the saturated character rows s_i of M.
    """
    n = M.n
    l = W.nvars - n
    if l < 0:
        raise ValueError("subspace ambient larger than the variety's ring")
    chars = quotient_characters(M)
    c = len(chars)
    big = n + c + l
    mapping = {i: i for i in range(n)}
    for s in range(l):
        mapping[n + s] = n + c + s
    gens = [g.reindex(big, mapping) for g in W.cleared_generators()]
    for j, row in enumerate(chars):
        pos = [max(v, 0) for v in row] + [0] * (c + l)
        neg = [max(-v, 0) for v in row] + [0] * (c + l)
        neg[n + j] = 1
        gens.append(Poly(big, {tuple(neg): Fraction(1), tuple(pos): Fraction(-1)}))
    sat = saturate(gens, budget)
    kept = []
    mapping_small = {n + j: j for j in range(c + l)}
    for g in sat:
        if all(v >= n for v in g.vars_present()):
            kept.append(g.reindex(c + l, {**{i: 0 for i in range(n)}, **mapping_small}))
    kept = buchberger(kept, GREVLEX, budget) if kept else ()
    return LaurentIdeal.make(c + l, list(kept) or [Poly.zero(c + l)])


def generic_fiber_dim(W: LaurentIdeal, M: QLinearSubspace,
                      budget: int = DEFAULT_BUDGET) -> int:
    """d(W, exp M): dim W minus the dimension of W/exp(M)."""
    dw = dim_variety(W, budget)
    if dw is None:
        raise EmptyVariety("variety is empty, no generic fiber")
    dq = dim_variety(quotient_by_subtorus(W, M, budget), budget)
    return dw - dq


def _coset_generators(nvars: int, rows, values, with_z: bool):
    """Binomials y^{row} = value for turn fractions; z variable appended if needed."""
    gens = []
    if not with_z:
        for row, v in zip(rows, values):
            gens.append(_binomial(nvars, row, v))
        return gens, nvars
    k = 1
    for v in values:
        k = k * v.denominator // _int_gcd(k, v.denominator)
    total = nvars + 1
    for row, v in zip(rows, values):
        idx = int(v * k) % k
        pos = tuple(max(x, 0) for x in row) + (0,)
        neg = tuple(max(-x, 0) for x in row) + (idx,)
        gens.append(Poly(total, {pos: Fraction(1), neg: Fraction(-1)}))
    gens.append(_cyclo_poly(total, k))
    return gens, total


def fiber_dim_at(W: LaurentIdeal, M: QLinearSubspace, point,
                 budget: int = DEFAULT_BUDGET):
    """Dimension of V(W) ∩ point·exp(M); None when the intersection is empty.

    The point is a tuple of nonzero Fractions or a TorsionPoint.
    """
    n = M.n
    if W.nvars != n:
        raise ValueError("specialize W before computing fiber dimensions")
    chars = quotient_characters(M)
    gens = list(W.cleared_generators())
    if isinstance(point, TorsionPoint):
        values = [point.char_value(row) for row in chars]
        with_z = any(v.denominator > 2 for v in values)
        extra, total = _coset_generators(n, chars, values, with_z)
        if with_z:
            gens = [g.reindex(total, {i: i for i in range(n)}) for g in gens]
        gens.extend(extra)
        nvars = total
    else:
        values = [Fraction(v) for v in point]
        if len(values) != n or any(v == 0 for v in values):
            raise ValueError("point must have n nonzero exact coordinates")
        for row in chars:
            target = Fraction(1)
            for v, e in zip(values, row):
                target *= v ** e
            pos = tuple(max(v, 0) for v in row)
            neg = tuple(max(-v, 0) for v in row)
            gens.append(Poly(n, {pos: Fraction(target.denominator),
                                 neg: Fraction(-target.numerator)}))
        nvars = n
    basis = saturate(gens, budget)
    if ideal_contains_one(basis):
        return None
    dim = _staircase_dim(basis, nvars)
    return dim


def point_on_variety(W: LaurentIdeal, point) -> bool:
    """Exact evaluation of every generator at a rational or torsion point."""
    if isinstance(point, TorsionPoint):
        k = point.order
        phi = list(cyclotomic_coeffs(k))
        for g in W.generators:
            dense = [Fraction(0)] * k if k > 1 else [Fraction(0)]
            for mon, c in g.terms.items():
                idx = sum(m * e for m, e in zip(mon, point.exponents)) % k
                dense[idx] += c
            if any(_dense_rem(dense, phi)):
                return False
        return True
    values = [Fraction(v) for v in point]
    return all(g.eval_all(values) == 0 for g in W.generators)


def exceptional_locus_member(W: LaurentIdeal, M: QLinearSubspace, point,
                             budget: int = DEFAULT_BUDGET) -> bool:
    """True when the fiber through the point jumps above the generic dimension."""
    if not point_on_variety(W, point):
        raise NotOnVariety("point does not lie on the variety")
    gd = generic_fiber_dim(W, M, budget)
    fd = fiber_dim_at(W, M, point, budget)
    return fd is not None and fd > gd


def torsion_cosets_bounded(W: LaurentIdeal, subtorus_candidates, order_bound: int,
                           budget: int = DEFAULT_BUDGET,
                           enumeration_cap: int = 200_000):
    """Torsion cosets T·zeta (order <= bound) among the candidates with T·zeta ⊆ V(W).

    Sound: membership is verified by reduction of W's generators modulo the
    coset ideal.  Complete only relative to the candidate list and bound.
    """
    if order_bound < 1:
        raise ValueError("order_bound must be >= 1")
    n = W.nvars
    results = []
    wgens = [g for g in LaurentIdeal.make(n, W.generators).cleared_generators()]
    seen_total = 0
    for T in subtorus_candidates:
        if T.n != n:
            raise ValueError("candidate subtorus in the wrong ambient torus")
        rows = T.lattice_rows
        seen: set[tuple] = set()
        for k in range(1, order_bound + 1):
            for exps in _tuples_mod(k, n):
                seen_total += 1
                if seen_total > enumeration_cap:
                    raise BudgetExceeded("torsion point enumeration cap hit",
                                         count=seen_total)
                pt = TorsionPoint(n, k, exps)
                key = tuple(pt.char_value(row) for row in rows)
                if key in seen:
                    continue
                seen.add(key)
                if _coset_contained(wgens, n, rows, key, budget):
                    results.append((T, pt))
    return results


def _tuples_mod(k, n):
    from itertools import product
    return product(range(k), repeat=n)


def _coset_contained(wgens, n, rows, values, budget) -> bool:
    with_z = any(v.denominator > 2 for v in values)
    gens, total = _coset_generators(n, rows, list(values), with_z)
    basis = saturate(gens, budget)
    if ideal_contains_one(basis):
        return False
    for g in wgens:
        if with_z:
            g = g.reindex(total, {i: i for i in range(n)})
        if not normal_form(g, list(basis), GREVLEX).is_zero:
            return False
    return True

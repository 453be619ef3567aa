"""Sparse multivariate polynomial arithmetic over Q.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients.  Negative exponents are tolerated by the representation (used
for Laurent polynomials on the torus); division, gcd and all Groebner-style
routines require ordinary nonnegative exponents and assert as much.

Polynomials are immutable: every operation returns a fresh ``Poly``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

Monomial = tuple[int, ...]


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Nonnegative gcd of two rationals: gcd of numerators / lcm of denominators."""
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = _int_gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """A global monomial order, exposed as a sort key on exponent tuples."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def key(self, mon: Monomial):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class _Lex(MonomialOrder):
    def key(self, mon):
        return mon


class _Grlex(MonomialOrder):
    def key(self, mon):
        return (sum(mon), mon)


class _Grevlex(MonomialOrder):
    def key(self, mon):
        return (sum(mon), tuple(-e for e in reversed(mon)))


class EliminationOrder(MonomialOrder):
    """Block order eliminating the first ``nfirst`` variables (grevlex blocks)."""

    __slots__ = ("nfirst",)

    def __init__(self, nfirst: int):
        super().__init__(f"elim{nfirst}")
        self.nfirst = nfirst

    def key(self, mon):
        head, tail = mon[: self.nfirst], mon[self.nfirst:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))


LEX = _Lex("lex")
GRLEX = _Grlex("grlex")
GREVLEX = _Grevlex("grevlex")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mon, coeff in (terms.items() if isinstance(terms, dict) else terms):
                c = Fraction(coeff)
                if c == 0:
                    continue
                mon = tuple(mon)
                if len(mon) != nvars:
                    raise ValueError(f"monomial {mon} has wrong arity for {nvars} vars")
                acc = clean.get(mon)
                clean[mon] = c if acc is None else acc + c
                if clean[mon] == 0:
                    del clean[mon]
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars, idx, power=1):
        exp = [0] * nvars
        exp[idx] = power
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, nvars, mon, coeff=1):
        return cls(nvars, {tuple(mon): Fraction(coeff)})

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(all(e == 0 for e in mon) for mon in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def has_negative_exponents(self):
        return any(e < 0 for mon in self.terms for e in mon)

    def vars_present(self):
        used = set()
        for mon in self.terms:
            for i, e in enumerate(mon):
                if e != 0:
                    used.add(i)
        return used

    def total_degree(self):
        """Maximal term degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(mon) for mon in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return 0
        return max(mon[var] for mon in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            acc = terms.get(mon)
            s = c if acc is None else acc + c
            if s == 0:
                terms.pop(mon, None)
            else:
                terms[mon] = s
        return self._wrap(terms)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return self._wrap({mon: -c for mon, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly(self.nvars)
            q = Fraction(other)
            return self._wrap({mon: c * q for mon, c in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(mon)
                s = c1 * c2 if acc is None else acc + c1 * c2
                if s == 0:
                    terms.pop(mon, None)
                else:
                    terms[mon] = s
        return self._wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_monomial(self, mon, coeff=1):
        mon = tuple(mon)
        return self._wrap({tuple(a + b for a, b in zip(m, mon)): c * Fraction(coeff)
                           for m, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return Poly.const(self.nvars, other)

    def _wrap(self, terms):
        p = Poly.__new__(Poly)
        p.nvars = self.nvars
        p.terms = terms
        p._hash = None
        return p

    # -- structure -----------------------------------------------------------

    def leading(self, order: MonomialOrder):
        """(monomial, coefficient) of the leading term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mon = max(self.terms, key=order.key)
        return mon, self.terms[mon]

    def sorted_terms(self, order: MonomialOrder, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def coeff_content(self) -> Fraction:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial).

        No early exit at 1: with fractional coefficients the gcd can still
        shrink (gcd(1, 1/2) = 1/2).
        """
        g = Fraction(0)
        for c in self.terms.values():
            g = frac_gcd(g, c)
        return g

    def normalized(self, order: MonomialOrder = GRLEX):
        """(content, primitive) with primitive having coprime integer
        coefficients and positive leading coefficient; self == content * primitive."""
        if self.is_zero:
            return Fraction(0), self
        content = self.coeff_content()
        _, lc = self.leading(order)
        if lc < 0:
            content = -content
        return content, self * (1 / content)

    def monic(self, order: MonomialOrder):
        if self.is_zero:
            return self
        _, lc = self.leading(order)
        return self * (1 / lc)

    # -- substitution and reindexing ------------------------------------------

    def reindex(self, new_nvars, mapping):
        """Move variable i to position mapping[i] in a ring with ``new_nvars`` vars."""
        terms = {}
        for mon, c in self.terms.items():
            new = [0] * new_nvars
            for i, e in enumerate(mon):
                if e:
                    new[mapping[i]] += e
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + c
        return Poly(new_nvars, terms)

    def eval_partial(self, values):
        """Substitute values[i] (a Fraction) where not None; remaining vars survive.

        Negative exponents are fine as long as the substituted value is nonzero.
        """
        keep = [i for i, v in enumerate(values) if v is None]
        pos = {i: j for j, i in enumerate(keep)}
        terms: dict[Monomial, Fraction] = {}
        for mon, c in self.terms.items():
            factor = Fraction(c)
            new = [0] * len(keep)
            for i, e in enumerate(mon):
                if values[i] is None:
                    new[pos[i]] = e
                elif e:
                    v = Fraction(values[i])
                    if v == 0 and e < 0:
                        raise ZeroDivisionError("substituting 0 into a negative power")
                    factor *= v ** e
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + factor
        return Poly(len(keep), {m: c for m, c in terms.items() if c != 0})

    def eval_all(self, values) -> Fraction:
        result = self.eval_partial(list(values))
        return result.constant_value()

    # -- formatting -----------------------------------------------------------

    def to_string(self, names, order: MonomialOrder = GRLEX) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mon, c in self.sorted_terms(order):
            factors = []
            for i, e in enumerate(mon):
                if e == 1:
                    factors.append(names[i])
                elif e != 0:
                    factors.append(f"{names[i]}^{e}")
            body = "*".join(factors)
            if not body:
                frag = str(abs(c))
            elif abs(c) == 1:
                frag = body
            else:
                frag = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, frag))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, frag in parts[1:]:
            out += f" {sign} {frag}"
        return out

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self):
        names = [f"v{i}" for i in range(self.nvars)]
        return f"Poly({self.to_string(names)})"

    def __bool__(self):
        return bool(self.terms)


# ---------------------------------------------------------------------------
# Exact division and gcd
# ---------------------------------------------------------------------------

def divexact(f: Poly, g: Poly) -> Poly:
    """Exact quotient f/g; raises ArithmeticError if g does not divide f."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return f
    order = GRLEX
    gm, gc = g.leading(order)
    quo: dict[Monomial, Fraction] = {}
    rem = f
    while not rem.is_zero:
        fm, fc = rem.leading(order)
        qmon = tuple(a - b for a, b in zip(fm, gm))
        if any(e < 0 for e in qmon):
            raise ArithmeticError("inexact polynomial division")
        qc = fc / gc
        quo[qmon] = quo.get(qmon, Fraction(0)) + qc
        rem = rem - g.mul_monomial(qmon, qc)
    return Poly(f.nvars, quo)


def _to_univar(f: Poly, var: int) -> dict[int, Poly]:
    """View f as univariate in ``var`` with coefficients free of ``var``."""
    coeffs: dict[int, dict] = {}
    for mon, c in f.terms.items():
        d = mon[var]
        rest = list(mon)
        rest[var] = 0
        coeffs.setdefault(d, {})[tuple(rest)] = c
    return {d: Poly(f.nvars, t) for d, t in coeffs.items()}


def _from_univar(coeffs: dict[int, Poly], var: int, nvars: int) -> Poly:
    terms = {}
    for d, p in coeffs.items():
        for mon, c in p.terms.items():
            m = list(mon)
            m[var] += d
            terms[tuple(m)] = c
    return Poly(nvars, terms)


def _uni_degree(u):
    return max(u) if u else -1


def _uni_scale(u, p: Poly):
    return {d: q * p for d, q in u.items() if not (q * p).is_zero}


def _uni_sub(u, v):
    out = dict(u)
    for d, p in v.items():
        q = out.get(d)
        s = -p if q is None else q - p
        if s.is_zero:
            out.pop(d, None)
        else:
            out[d] = s
    return out


def _uni_shift_mul(u, k: int, p: Poly):
    return {d + k: q * p for d, q in u.items() if not (q * p).is_zero}


def _pseudo_rem(f, g):
    """Pseudo-remainder of univariate-with-poly-coefficient representations."""
    df, dg = _uni_degree(f), _uni_degree(g)
    lc_g = g[dg]
    r = dict(f)
    while True:
        dr = _uni_degree(r)
        if dr < dg or dr < 0:
            return r
        lead = r[dr]
        r = _uni_sub(_uni_scale(r, lc_g), _uni_shift_mul(g, dr - dg, lead))


def _content_wrt(f: Poly, var: int):
    """(content, primitive) of f seen as univariate in ``var``."""
    u = _to_univar(f, var)
    cont = Poly.zero(f.nvars)
    for p in u.values():
        cont = poly_gcd(cont, p)
        if cont.is_constant and cont.constant_value() == 1:
            break
    if cont.is_zero:
        return cont, f
    prim = {d: divexact(p, cont) for d, p in u.items()}
    return cont, _from_univar(prim, var, f.nvars)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Gcd in Q[x1..xn], normalized: coprime integer coefficients, positive lead.

    Primitive PRS on the lowest variable present; small inputs only.
    """
    if f.nvars != g.nvars:
        raise ValueError("mixed variable counts")
    if f.is_zero:
        return g.normalized()[1] if not g.is_zero else g
    if g.is_zero:
        return f.normalized()[1]
    fvars, gvars = f.vars_present(), g.vars_present()
    if not fvars and not gvars:
        return Poly.const(f.nvars, frac_gcd(f.constant_value(), g.constant_value()))
    if not fvars or not gvars:
        const = f if not fvars else g
        other = g if not fvars else f
        cont = other.coeff_content()
        return Poly.const(f.nvars, frac_gcd(const.constant_value(), cont))
    shared = fvars | gvars
    var = min(shared)
    if var not in fvars:
        cont, _ = _content_wrt(g, var)
        return poly_gcd(f, cont)
    if var not in gvars:
        cont, _ = _content_wrt(f, var)
        return poly_gcd(cont, g)
    cf, pf = _content_wrt(f, var)
    cg, pg = _content_wrt(g, var)
    c = poly_gcd(cf, cg)
    a, b = _to_univar(pf, var), _to_univar(pg, var)
    if _uni_degree(a) < _uni_degree(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, r
        if b:
            rp = _from_univar(b, var, f.nvars)
            _, rp = _content_wrt(rp, var)
            _, rp = rp.normalized()
            b = _to_univar(rp, var)
    h = _from_univar(a, var, f.nvars)
    _, h = _content_wrt(h, var)
    result = c * h
    return result.normalized()[1]


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero or g.is_zero:
        return Poly.zero(f.nvars)
    return divexact(f * g, poly_gcd(f, g)).normalized()[1]

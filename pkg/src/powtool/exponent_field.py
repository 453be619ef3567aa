"""Exact arithmetic in the exponent field K = Q(l1,...,lm).

The generators l1..lm are treated as algebraically independent
indeterminates, so every element of K is a rational function with integer
coefficients.  Canonical form: numerator and denominator are coprime with no
common content, and the denominator has positive leading coefficient under
graded lexicographic order.  Zero is 0/1.

The module also provides Q-linear basis extraction for finite scalar
families and high-precision real embedding of scalars at user-supplied
lambda values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import NearSingularEvaluation
from .polynomials import GRLEX, Poly, divexact, frac_gcd, poly_gcd, poly_lcm

CANONICAL_ORDER = GRLEX


class ExponentScalar:
    """An element of K = Q(l1..lm) in canonical rational-function form."""

    __slots__ = ("nlambdas", "num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.nvars, 1)
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator in different rings")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        self.nlambdas = num.nvars
        self.num, self.den = self._canonicalize(num, den)
        self._hash = None

    @staticmethod
    def _canonicalize(num: Poly, den: Poly):
        if num.is_zero:
            return num, Poly.const(num.nvars, 1)
        g = poly_gcd(num, den)
        if not (g.is_constant and g.constant_value() == 1):
            num = divexact(num, g)
            den = divexact(den, g)
        cn, pn = num.normalized(CANONICAL_ORDER)
        cd, pd = den.normalized(CANONICAL_ORDER)
        ratio = cn / cd
        num = pn * ratio.numerator
        den = pd * ratio.denominator
        if den.leading(CANONICAL_ORDER)[1] < 0:
            num, den = -num, -den
        return num, den

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_fraction(cls, nlambdas: int, value) -> "ExponentScalar":
        q = Fraction(value)
        return cls(Poly.const(nlambdas, q.numerator), Poly.const(nlambdas, q.denominator))

    @classmethod
    def lam(cls, nlambdas: int, index: int) -> "ExponentScalar":
        """The generator l_{index+1}."""
        return cls(Poly.variable(nlambdas, index))

    @classmethod
    def zero(cls, nlambdas: int) -> "ExponentScalar":
        return cls(Poly.zero(nlambdas))

    @classmethod
    def one(cls, nlambdas: int) -> "ExponentScalar":
        return cls(Poly.const(nlambdas, 1))

    # -- predicates ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_rational(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("scalar is not rational")
        return self.num.constant_value() / self.den.constant_value()

    def total_degree(self) -> int:
        """Degree measure used for pivot selection: deg(num) + deg(den)."""
        return self.num.total_degree() + self.den.total_degree()

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ExponentScalar):
            if other.nlambdas != self.nlambdas:
                raise ValueError("scalars over different lambda counts")
            return other
        if isinstance(other, (int, Fraction)):
            return ExponentScalar.from_fraction(self.nlambdas, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExponentScalar(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExponentScalar(self.num * other.den - other.num * self.den,
                              self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ExponentScalar(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExponentScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero scalar")
        return ExponentScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return ExponentScalar.from_fraction(self.nlambdas, other) / self

    def __pow__(self, k: int):
        if k < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return ExponentScalar(self.den ** (-k), self.num ** (-k))
        return ExponentScalar(self.num ** k, self.den ** k)

    # -- dunder -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExponentScalar.from_fraction(self.nlambdas, other)
        return (isinstance(other, ExponentScalar)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        names = [f"l{i + 1}" for i in range(self.nlambdas)]
        num = self.num.to_string(names, CANONICAL_ORDER)
        if self.den.is_constant and self.den.constant_value() == 1:
            return num
        den = self.den.to_string(names, CANONICAL_ORDER)
        num_s = f"({num})" if len(self.num.terms) > 1 else num
        den_s = f"({den})" if len(self.den.terms) > 1 else den
        return f"{num_s}/{den_s}"

    def __repr__(self):
        return f"ExponentScalar({self})"

    def __bool__(self):
        return not self.is_zero


def scalar_arith(a: ExponentScalar, b: ExponentScalar, op: str) -> ExponentScalar:
    """Field operation on canonical scalars; op is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Q-linear structure
# ---------------------------------------------------------------------------

def qbasis_decompose(scalars):
    """Q-basis of span_Q(scalars) together with exact rational coordinates.

    Returns (basis, coords) with coords[i] the coordinate row of scalars[i],
    so that sum_j coords[i][j] * basis[j] == scalars[i] exactly.  The basis
    size equals the Q-linear dimension of the family.
    """
    scalars = list(scalars)
    if not scalars:
        return [], []
    m = scalars[0].nlambdas
    if any(s.nlambdas != m for s in scalars):
        raise ValueError("scalars over different lambda counts")
    common = Poly.const(m, 1)
    for s in scalars:
        common = poly_lcm(common, s.den)
    numerators = [s.num * divexact(common, s.den) for s in scalars]

    monomials = sorted({mon for p in numerators for mon in p.terms},
                       key=CANONICAL_ORDER.key)
    col = {mon: j for j, mon in enumerate(monomials)}
    rows = [[Fraction(0)] * len(monomials) for _ in numerators]
    for i, p in enumerate(numerators):
        for mon, c in p.terms.items():
            rows[i][col[mon]] = c

    echelon, pivots = _q_row_echelon(rows)
    basis = []
    for r in echelon:
        poly = Poly(m, {monomials[j]: c for j, c in enumerate(r) if c != 0})
        basis.append(ExponentScalar(poly, common))
    coords = [[row[p] for p in pivots] for row in rows]
    return basis, coords


def _q_row_echelon(rows):
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


# ---------------------------------------------------------------------------
# Numeric embedding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingSpec:
    """Real values for l1..lm as decimal strings, plus working precision."""

    lambda_values: tuple[str, ...]
    precision_bits: int = 128

    def __post_init__(self):
        object.__setattr__(self, "lambda_values", tuple(str(v) for v in self.lambda_values))
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")

    @property
    def nlambdas(self) -> int:
        return len(self.lambda_values)

    def values(self):
        """lambda values as mpf at the current mpmath precision."""
        return [mp.mpf(v) for v in self.lambda_values]


def _eval_poly_mp(p: Poly, values):
    total = mp.mpf(0)
    for mon, c in sorted(p.terms.items()):
        term = mp.mpf(c.numerator) / c.denominator
        for v, e in zip(values, mon):
            if e:
                term *= v ** e
        total += term
    return total


def numeric_embed(a: ExponentScalar, emb: EmbeddingSpec):
    """Evaluate a at the embedding's lambda values, as mpf at its precision.

    Raises NearSingularEvaluation when the denominator's value falls below
    2^(-precision_bits/2), in which case the relative-error contract cannot
    be honored.
    """
    if a.nlambdas != emb.nlambdas:
        raise ValueError("scalar and embedding have different lambda counts")
    prec = emb.precision_bits
    with mp.workprec(prec + 32):
        values = emb.values()
        den = _eval_poly_mp(a.den, values)
        if abs(den) < mp.mpf(2) ** Fraction(-prec, 2):
            raise NearSingularEvaluation(
                f"denominator {a.den!r} evaluates to {mp.nstr(den, 8)}")
        num = _eval_poly_mp(a.num, values)
        result = num / den
    with mp.workprec(prec):
        return +result

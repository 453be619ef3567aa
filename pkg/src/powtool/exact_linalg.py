"""Exact matrix algebra over Q and over K = Q(l1..lm).

The K-side implements fraction-free Gauss-Jordan elimination: each row is
cleared to a vector of polynomials, the polynomial content of a row is
divided out after every combination step, and entries only become rational
functions again when rows are scaled monic at the end.  Pivots are chosen by
smallest total degree in the working column (ties to the topmost row), which
keeps coefficient growth down and makes results reproducible.

The Q-side covers plain rational elimination plus the integer-lattice
utilities (primitive vectors, kernels, Hermite form, saturation) used by the
subspace and toric layers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .exponent_field import ExponentScalar
from .polynomials import Poly, divexact, poly_gcd


# ---------------------------------------------------------------------------
# Matrices over K
# ---------------------------------------------------------------------------

class KMatrix:
    """Immutable row-major matrix of ExponentScalar entries."""

    __slots__ = ("nlambdas", "rows", "_hash")

    def __init__(self, nlambdas: int, rows):
        self.nlambdas = nlambdas
        coerced = []
        width = None
        for row in rows:
            new = []
            for e in row:
                if not isinstance(e, ExponentScalar):
                    e = ExponentScalar.from_fraction(nlambdas, e)
                elif e.nlambdas != nlambdas:
                    raise ValueError("entry over wrong lambda count")
                new.append(e)
            if width is None:
                width = len(new)
            elif len(new) != width:
                raise ValueError("ragged rows")
            coerced.append(tuple(new))
        self.rows = tuple(coerced)
        self._hash = None

    @classmethod
    def identity(cls, nlambdas, n):
        one = ExponentScalar.one(nlambdas)
        zero = ExponentScalar.zero(nlambdas)
        return cls(nlambdas, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nlambdas, nrows, ncols):
        z = ExponentScalar.zero(nlambdas)
        return cls(nlambdas, [[z] * ncols for _ in range(nrows)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return KMatrix(self.nlambdas, list(zip(*self.rows))) if self.rows else self

    def matvec(self, vec):
        vec = list(vec)
        out = []
        for row in self.rows:
            acc = ExponentScalar.zero(self.nlambdas)
            for e, v in zip(row, vec):
                acc = acc + e * v
            out.append(acc)
        return out

    def matmul(self, other: "KMatrix"):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = ExponentScalar.zero(self.nlambdas)
                for e, v in zip(row, col):
                    acc = acc + e * v
                new.append(acc)
            out.append(new)
        return KMatrix(self.nlambdas, out)

    def stack(self, other: "KMatrix"):
        if other.nrows and self.nrows and other.ncols != self.ncols:
            raise ValueError("shape mismatch")
        return KMatrix(self.nlambdas, list(self.rows) + list(other.rows))

    def __eq__(self, other):
        return isinstance(other, KMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"KMatrix[{body}]"


def _row_to_polys(row):
    """Clear a row of scalars to polynomial entries (common denominator dropped)."""
    if all(e.is_zero for e in row):
        return [e.num for e in row]
    m = row[0].nlambdas
    common = Poly.const(m, 1)
    for e in row:
        if not e.is_zero:
            g = poly_gcd(common, e.den)
            common = divexact(common * e.den, g)
    return [e.num * divexact(common, e.den) if not e.is_zero else e.num for e in row]


def _normalize_poly_row(row):
    """Divide out the polynomial content of a row of Poly entries."""
    content = None
    for p in row:
        if not p.is_zero:
            content = p if content is None else poly_gcd(content, p)
            if content.is_constant and abs(content.constant_value()) == 1:
                content = None
                break
    if content is None or content.is_zero:
        # also strip rational content
        pass
    else:
        row = [divexact(p, content) for p in row]
    frac_content = Fraction(0)
    for p in row:
        frac_content = _frac_gcd2(frac_content, p.coeff_content())
    if frac_content not in (0, 1):
        inv = 1 / frac_content
        row = [p * inv for p in row]
    return row


def _frac_gcd2(a, b):
    if a == 0:
        return abs(Fraction(b))
    if b == 0:
        return abs(Fraction(a))
    a, b = Fraction(a), Fraction(b)
    num = _int_gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def rref(A: KMatrix):
    """Reduced row echelon form over K.

    Returns (R, rank, pivot_columns); R has monic pivots, zeros above and
    below each pivot, and zero rows removed to the bottom.
    """
    m = A.nlambdas
    work = [_normalize_poly_row(_row_to_polys(row)) for row in A.rows]
    nrows, ncols = len(work), A.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        candidates = [(work[i][c].total_degree(), i) for i in range(r, nrows)
                      if not work[i][c].is_zero]
        if not candidates:
            continue
        _, chosen = min(candidates)
        work[r], work[chosen] = work[chosen], work[r]
        piv = work[r][c]
        for i in range(nrows):
            if i == r or work[i][c].is_zero:
                continue
            coef = work[i][c]
            work[i] = _normalize_poly_row(
                [piv * a - coef * b for a, b in zip(work[i], work[r])])
        pivots.append(c)
        r += 1
    rank = r
    zero = ExponentScalar.zero(m)
    out = []
    for i in range(nrows):
        if i < rank:
            piv = work[i][pivots[i]]
            out.append([ExponentScalar(p, piv) if not p.is_zero else zero for p in work[i]])
        else:
            out.append([zero] * ncols)
    return KMatrix(m, out), rank, tuple(pivots)


def kernel_basis(A: KMatrix) -> KMatrix:
    """Rows form a K-basis of the solution space {x : A x = 0}."""
    R, rank, pivots = rref(A)
    n = A.ncols
    m = A.nlambdas
    free = [c for c in range(n) if c not in pivots]
    rows = []
    one = ExponentScalar.one(m)
    zero = ExponentScalar.zero(m)
    for f in free:
        vec = [zero] * n
        vec[f] = one
        for i, p in enumerate(pivots):
            vec[p] = -R.entry(i, f)
        rows.append(vec)
    return KMatrix(m, rows)


def solve_linear(A: KMatrix, b):
    """One exact solution of A x = b, or None when the system is inconsistent."""
    m = A.nlambdas
    b = [e if isinstance(e, ExponentScalar) else ExponentScalar.from_fraction(m, e)
         for e in b]
    if len(b) != A.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = KMatrix(m, [list(row) + [v] for row, v in zip(A.rows, b)])
    R, rank, pivots = rref(aug)
    n = A.ncols
    if pivots and pivots[-1] == n:
        return None
    zero = ExponentScalar.zero(m)
    x = [zero] * n
    for i, p in enumerate(pivots):
        x[p] = R.entry(i, n)
    return x


def k_rank(A: KMatrix) -> int:
    return rref(A)[1]


# ---------------------------------------------------------------------------
# Matrices over Q
# ---------------------------------------------------------------------------

class QMatrix:
    """Immutable matrix of Fractions; rows may carry a normalized-integer flag."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        coerced = []
        width = None
        for row in rows:
            new = tuple(Fraction(e) for e in row)
            if width is None:
                width = len(new)
            elif len(new) != width:
                raise ValueError("ragged rows")
            coerced.append(new)
        self.rows = tuple(coerced)
        self._hash = None

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j):
        return self.rows[i][j]

    def is_integer(self):
        return all(e.denominator == 1 for row in self.rows for e in row)

    def int_rows(self):
        return tuple(tuple(int(e) for e in row) for row in self.rows)

    def matvec(self, vec):
        vec = [Fraction(v) for v in vec]
        return [sum(e * v for e, v in zip(row, vec)) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"QMatrix[{body}]"


def q_rref(rows):
    """Reduced row echelon form over Q: (echelon rows incl. zero rows, rank, pivots)."""
    mat = [[Fraction(e) for e in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
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
    return mat, r, pivots


def q_kernel(rows, ncols=None):
    """Basis rows of {x : rows . x = 0} over Q (deterministic free-column order)."""
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    mat, rank, pivots = q_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -mat[i][f]
        out.append(vec)
    return out


def q_solve(rows, rhs):
    """One solution of rows . x = rhs over Q, or None when inconsistent."""
    if not rows:
        return []
    aug = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    n = len(rows[0])
    mat, rank, pivots = q_rref(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = mat[i][n]
    return x


def q_rank(rows) -> int:
    if not rows:
        return 0
    return q_rref(rows)[1]


# ---------------------------------------------------------------------------
# Integer lattice utilities
# ---------------------------------------------------------------------------

def primitive_int_vector(vec):
    """Scale a rational vector to coprime integers with positive leading entry."""
    vec = [Fraction(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // _int_gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = _int_gcd(g, v)
    if g == 0:
        return tuple(0 for _ in ints)
    ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0))
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def canonical_int_rows(rows):
    """Canonical defining matrix: Q-rref then primitive integer scaling per row."""
    mat, rank, _ = q_rref(rows)
    return tuple(primitive_int_vector(r) for r in mat[:rank])


def int_kernel(rows, ncols=None):
    """Z-basis of {x in Z^n : rows . x = 0} via column elimination.

    The result spans a saturated lattice (it is a kernel), listed in a
    deterministic order.
    """
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    m = len(rows)
    acols = [[int(rows[i][j]) for i in range(m)] for j in range(ncols)]
    vcols = [[1 if k == j else 0 for k in range(ncols)] for j in range(ncols)]
    c = 0
    for r in range(m):
        while True:
            nzs = [j for j in range(c, ncols) if acols[j][r] != 0]
            if not nzs:
                break
            j0 = min(nzs, key=lambda j: (abs(acols[j][r]), j))
            acols[c], acols[j0] = acols[j0], acols[c]
            vcols[c], vcols[j0] = vcols[j0], vcols[c]
            done = True
            for j in range(c + 1, ncols):
                if acols[j][r] != 0:
                    q = acols[j][r] // acols[c][r]
                    if q:
                        acols[j] = [a - q * b for a, b in zip(acols[j], acols[c])]
                        vcols[j] = [a - q * b for a, b in zip(vcols[j], vcols[c])]
                    if acols[j][r] != 0:
                        done = False
            if done:
                c += 1
                break
    return [tuple(col) for col in vcols[c:]]


def saturate_row_lattice(rows, ncols=None):
    """Z-basis of rowspan_Q(rows) ∩ Z^n (the saturation of the row lattice)."""
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    null = q_kernel(rows, ncols) if rows else None
    if rows and not null:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    if not rows:
        return []
    null_int = [primitive_int_vector(v) for v in null]
    return int_kernel(null_int, ncols)


def hnf_rows(rows, ncols=None):
    """Row-style Hermite normal form of an integer row lattice (canonical)."""
    if ncols is None:
        if not rows:
            return ()
        ncols = len(rows[0])
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return ()
    r = 0
    for c in range(ncols):
        nzs = [i for i in range(r, len(mat)) if mat[i][c] != 0]
        if not nzs:
            continue
        while True:
            nzs = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if not nzs:
                break
            i0 = min(nzs, key=lambda i: (abs(mat[i][c]), i))
            mat[r], mat[i0] = mat[i0], mat[r]
            reduced = True
            for i in range(r + 1, len(mat)):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    if q:
                        mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c] != 0:
                        reduced = False
            if reduced:
                break
        if mat[r][c] < 0:
            mat[r] = [-v for v in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r] if any(row))

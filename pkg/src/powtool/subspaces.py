"""K-linear and Q-linear subspace calculus on V^n and V^{n+l}.

Subspaces are stored by canonical defining matrices: reduced row echelon
form over K (monic pivots) for K-linear subspaces, and primitive-integer
scaled rref rows for Q-linear subspaces.  Equality of subspaces is therefore
syntactic equality of matrices.

A K-linear subspace may carry l parameter coordinates a1..al after its n
ambient coordinates; L(a) denotes the affine slice at a parameter vector.
The module implements the slice decomposition L(a) = L(0) + r(a), the
maximal Q-linear subspace inside L, the minimal Q-linear envelope of L,
rational sections, complements, quotients by Q-subspaces, and lattice
operations.

Solution-set containment is identified with row-span containment throughout;
this is valid because the ambient vector space is infinite dimensional over
K (a standing assumption, not something checked at runtime).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotContained
from .exact_linalg import (KMatrix, QMatrix, canonical_int_rows, kernel_basis,
                           q_kernel, q_rank, q_rref, q_solve, rref,
                           saturate_row_lattice)
from .exponent_field import ExponentScalar, qbasis_decompose


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KLinearSubspace:
    """Solution set of K-linear equations on (x1..xn, a1..al)."""

    n: int
    l: int
    matrix: KMatrix  # canonical rref, full row rank, n + l columns

    @classmethod
    def from_equations(cls, nlambdas: int, n: int, l: int, rows) -> "KLinearSubspace":
        mat = KMatrix(nlambdas, rows) if rows else KMatrix.zero(nlambdas, 0, n + l)
        if rows and mat.ncols != n + l:
            raise ValueError("equation width does not match n + l")
        R, rank, _ = rref(mat)
        return cls(n, l, KMatrix(nlambdas, R.rows[:rank]))

    @classmethod
    def full_space(cls, nlambdas: int, n: int, l: int = 0) -> "KLinearSubspace":
        return cls(n, l, KMatrix.zero(nlambdas, 0, n + l))

    @property
    def nlambdas(self) -> int:
        return self.matrix.nlambdas

    @property
    def ambient(self) -> int:
        return self.n + self.l

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    @property
    def dim(self) -> int:
        return self.ambient - self.rank

    def spanning_rows(self) -> KMatrix:
        """Rows form a K-basis of the subspace."""
        if self.rank == 0:
            return KMatrix.identity(self.nlambdas, self.ambient)
        return kernel_basis(self.matrix)

    def contains_point(self, vec) -> bool:
        return all(v.is_zero for v in self.matrix.matvec(vec)) if self.rank else True

    def as_unparametrized(self) -> "KLinearSubspace":
        """The same solution set viewed in V^{n+l} with no parameter split."""
        return KLinearSubspace(self.ambient, 0, self.matrix)

    def x_block(self) -> KMatrix:
        return KMatrix(self.nlambdas, [row[: self.n] for row in self.matrix.rows])

    def a_block(self) -> KMatrix:
        return KMatrix(self.nlambdas, [row[self.n:] for row in self.matrix.rows])

    def __repr__(self):
        return f"KLinearSubspace(n={self.n}, l={self.l}, dim={self.dim})"


@dataclass(frozen=True)
class QLinearSubspace:
    """Solution set of integer linear equations on x1..xn."""

    n: int
    matrix: QMatrix  # canonical: rref scaled to primitive integer rows

    @classmethod
    def from_rows(cls, n: int, rows) -> "QLinearSubspace":
        canon = canonical_int_rows(rows) if rows else ()
        if rows and len(rows[0]) != n:
            raise ValueError("row width does not match n")
        return cls(n, QMatrix(canon))

    @classmethod
    def from_spanning(cls, n: int, rows) -> "QLinearSubspace":
        if not rows:
            return cls.zero_subspace(n)
        return cls.from_rows(n, q_kernel(rows, n))

    @classmethod
    def full_space(cls, n: int) -> "QLinearSubspace":
        return cls(n, QMatrix([]))

    @classmethod
    def zero_subspace(cls, n: int) -> "QLinearSubspace":
        return cls.from_rows(n, [[1 if j == i else 0 for j in range(n)] for i in range(n)])

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    @property
    def dim(self) -> int:
        return self.n - self.rank

    @property
    def height(self) -> int:
        """Max |entry| of the canonical defining matrix (0 for the full space)."""
        return max((abs(int(e)) for row in self.matrix.rows for e in row), default=0)

    def spanning_rows(self):
        """Primitive integer rows spanning the subspace."""
        if self.rank == 0:
            return [tuple(1 if j == i else 0 for j in range(self.n)) for i in range(self.n)]
        from .exact_linalg import primitive_int_vector
        return [primitive_int_vector(v) for v in q_kernel(self.matrix.rows, self.n)]

    def contains_point(self, vec) -> bool:
        return all(v == 0 for v in self.matrix.matvec(vec)) if self.rank else True

    def to_k(self, nlambdas: int, l: int = 0) -> KLinearSubspace:
        """The same subspace as a K-linear subspace of V^{n+l} (zero on params)."""
        zero = ExponentScalar.zero(nlambdas)
        rows = []
        for row in self.matrix.rows:
            rows.append([ExponentScalar.from_fraction(nlambdas, e) for e in row]
                        + [zero] * l)
        mat = KMatrix(nlambdas, rows) if rows else KMatrix.zero(nlambdas, 0, self.n + l)
        return KLinearSubspace(self.n, l, mat)

    def embed_with_params(self, l: int) -> "QLinearSubspace":
        """M x {0} inside V^{n+l}: parameters forced to zero."""
        rows = [list(map(int, row)) + [0] * l for row in self.matrix.int_rows()]
        for s in range(l):
            rows.append([0] * self.n + [1 if j == s else 0 for j in range(l)])
        return QLinearSubspace.from_rows(self.n + l, rows)

    def __repr__(self):
        return f"QLinearSubspace(n={self.n}, dim={self.dim})"


@dataclass(frozen=True)
class AffineCoset:
    """direction + shift; shift is a tuple of exact coordinates."""

    direction: object  # KLinearSubspace or QLinearSubspace
    shift: tuple

    def __post_init__(self):
        want = self.direction.ambient if isinstance(self.direction, KLinearSubspace) \
            else self.direction.n
        if len(self.shift) != want:
            raise ValueError("shift length does not match ambient dimension")

    def contains_point(self, vec) -> bool:
        diff = [v - s for v, s in zip(vec, self.shift)]
        return self.direction.contains_point(diff)


# ---------------------------------------------------------------------------
# Dimension and decomposition
# ---------------------------------------------------------------------------

def dim_of(L: KLinearSubspace) -> int:
    """co-rank of the defining matrix: n + l - rank."""
    return L.dim


def dim_fiber(L: KLinearSubspace) -> int:
    """dim L(a) for parameter vectors in the projection (equals dim L(0))."""
    from .exact_linalg import k_rank
    return L.n - k_rank(L.x_block())


def homogeneous_part(L: KLinearSubspace) -> KLinearSubspace:
    """L(0): the fiber over the zero parameter vector."""
    return KLinearSubspace.from_equations(L.nlambdas, L.n, 0,
                                          [list(r) for r in L.x_block().rows])


def parameter_projection(L: KLinearSubspace) -> KLinearSubspace:
    """pr_{n+1..n+l} L, a K-linear subspace of V^l."""
    span = L.spanning_rows()
    tails = [row[L.n:] for row in span.rows]
    return _from_spanning_k(L.nlambdas, L.l, tails)


def _from_spanning_k(nlambdas: int, n: int, rows) -> KLinearSubspace:
    if not rows:
        return KLinearSubspace.from_equations(
            nlambdas, n, 0,
            [[1 if j == i else 0 for j in range(n)] for i in range(n)])
    defining = kernel_basis(KMatrix(nlambdas, rows))
    return KLinearSubspace.from_equations(nlambdas, n, 0, [list(r) for r in defining.rows])


def _rref_with_transform(A: KMatrix):
    """rref restricted to A's columns, with the row-transform carried along.

    Returns (R, T, rank, pivots) where row ops applied to A are applied to an
    identity block: R = (ops) A, T = (ops) I, both scaled so pivots are monic.
    """
    from .exact_linalg import _normalize_poly_row, _row_to_polys
    m = A.nlambdas
    ncols = A.ncols
    nrows = A.nrows
    one = ExponentScalar.one(m)
    work = []
    for i, row in enumerate(A.rows):
        aug = list(row) + [one if j == i else ExponentScalar.zero(m) for j in range(nrows)]
        work.append(_normalize_poly_row(_row_to_polys(aug)))
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
    zero = ExponentScalar.zero(m)
    R_rows, T_rows = [], []
    for i in range(nrows):
        if i < r:
            piv = work[i][pivots[i]]
            scaled = [ExponentScalar(p, piv) if not p.is_zero else zero for p in work[i]]
        else:
            scaled = [ExponentScalar(p) if not p.is_zero else zero for p in work[i]]
        R_rows.append(scaled[:ncols])
        T_rows.append(scaled[ncols:])
    return (KMatrix(m, R_rows) if R_rows else KMatrix.zero(m, 0, ncols),
            KMatrix(m, T_rows) if T_rows else KMatrix.zero(m, 0, nrows),
            r, pivots)


def affine_decompose(L: KLinearSubspace):
    """(L0, r): L(a) = L(0) + r(a) for every a in the parameter projection.

    r is returned as an n x l matrix over K; it is one valid section (any two
    differ by L(0)).
    """
    m = L.nlambdas
    Ax, Aa = L.x_block(), L.a_block()
    L0 = homogeneous_part(L)
    if L.rank == 0 or L.l == 0:
        return L0, KMatrix.zero(m, L.n, L.l)
    _, T, rank, pivots = _rref_with_transform(Ax)
    TAa = T.matmul(Aa)
    zero = ExponentScalar.zero(m)
    rows = [[zero] * L.l for _ in range(L.n)]
    for i, p in enumerate(pivots):
        rows[p] = [-TAa.entry(i, s) for s in range(L.l)]
    return L0, KMatrix(m, rows)


# ---------------------------------------------------------------------------
# Q-structure inside and around a K-subspace
# ---------------------------------------------------------------------------

def _expansion_rows(scalars_row):
    """Expand a row of K-scalars over a Q-basis of its entries.

    Returns rational rows u_t with row = sum_t b_t * u_t for the basis b_t.
    """
    basis, coords = qbasis_decompose(list(scalars_row))
    t = len(basis)
    return [[coords[j][k] for j in range(len(scalars_row))] for k in range(t)]


def maximal_q_subspace(L: KLinearSubspace) -> QLinearSubspace:
    """N_L: the unique maximal Q-linear subspace contained in L (l = 0 only)."""
    if L.l != 0:
        raise ValueError("maximal_q_subspace needs an unparametrized subspace")
    stacked = []
    for row in L.matrix.rows:
        stacked.extend(_expansion_rows(row))
    if not stacked:
        return QLinearSubspace.full_space(L.n)
    return QLinearSubspace.from_rows(L.n, stacked)


def minimal_q_envelope(L: KLinearSubspace) -> QLinearSubspace:
    """Smallest Q-linear subspace containing L (l = 0 only)."""
    if L.l != 0:
        raise ValueError("minimal_q_envelope needs an unparametrized subspace")
    span = L.spanning_rows()
    vectors = []
    for row in span.rows:
        vectors.extend(_expansion_rows(row))
    return QLinearSubspace.from_spanning(L.n, vectors)


def is_free(L: KLinearSubspace) -> bool:
    """True when L is not contained in any proper Q-linear subspace."""
    return minimal_q_envelope(L.as_unparametrized()).dim == L.ambient


def rational_section(L: KLinearSubspace):
    """A rational matrix q with q a in L(a) for all a in the projection, or None."""
    m = L.nlambdas
    n, l = L.n, L.l
    proj = parameter_projection(L)
    G = proj.spanning_rows()
    if L.rank == 0:
        return QMatrix([[0] * l for _ in range(n)])
    scalars = []
    index = {}
    equations = []  # (coeff scalar index per unknown, const scalar index)
    def intern(s):
        if s not in index:
            index[s] = len(scalars)
            scalars.append(s)
        return index[s]

    for i in range(L.rank):
        for g in G.rows:
            coeffs = {}
            for j in range(n):
                aij = L.matrix.entry(i, j)
                if aij.is_zero:
                    continue
                for s in range(l):
                    if g[s].is_zero:
                        continue
                    coeffs[(j, s)] = intern(aij * g[s])
            const = ExponentScalar.zero(m)
            for s in range(l):
                const = const + L.matrix.entry(i, n + s) * g[s]
            equations.append((coeffs, intern(const)))
    if not equations:
        return QMatrix([[0] * l for _ in range(n)])
    basis, coords = qbasis_decompose(scalars)
    t = len(basis)
    nunknown = n * l
    rows, rhs = [], []
    for coeffs, ci in equations:
        for k in range(t):
            row = [Fraction(0)] * nunknown
            for (j, s), si in coeffs.items():
                row[j * l + s] = coords[si][k]
            rows.append(row)
            rhs.append(-coords[ci][k])
    if not rows:
        return QMatrix([[0] * l for _ in range(n)])
    sol = q_solve(rows, rhs)
    if sol is None:
        return None
    return QMatrix([[sol[j * l + s] for s in range(l)] for j in range(n)])


def orth_complement(M: QLinearSubspace) -> QLinearSubspace:
    """A complement with V^n = M (+) M_perp, defined by rows extending M's."""
    n = M.n
    base = [list(map(int, r)) for r in M.matrix.int_rows()]
    rank = len(base)
    extension = []
    for i in range(n):
        if rank + len(extension) == n:
            break
        e = [1 if j == i else 0 for j in range(n)]
        if q_rank(base + extension + [e]) > rank + len(extension):
            extension.append(e)
    return QLinearSubspace.from_rows(n, extension) if extension \
        else QLinearSubspace.full_space(n)


def quotient_characters(M: QLinearSubspace):
    """Integer character rows of V^n/M: a basis of the saturation of M's rows.

    These rows define both the linear quotient map v -> (s_i . v) and the
    monomial quotient map y -> y^{s_i} on the torus, keeping the two sides of
    a configuration in matching coordinates.
    """
    from .exact_linalg import hnf_rows
    rows = M.matrix.int_rows()
    if not rows:
        return ()
    return hnf_rows(saturate_row_lattice(list(rows), M.n), M.n)


def quotient_subspace(L: KLinearSubspace, M: QLinearSubspace) -> KLinearSubspace:
    """L/M inside quotient coordinates, parameters carried through.

    M lives in V^n and is taken modulo M x {0} in V^{n+l}; the result has
    dim L - dim(L ∩ (M x {0})) and ambient (n - dim M) + l.
    """
    if M.n != L.n:
        raise ValueError("ambient mismatch between L and M")
    chars = quotient_characters(M)
    c = len(chars)
    m = L.nlambdas
    span = L.spanning_rows()
    mapped = []
    for row in span.rows:
        head = []
        for s in chars:
            acc = ExponentScalar.zero(m)
            for coeff, v in zip(s, row[: L.n]):
                if coeff:
                    acc = acc + v * coeff
            head.append(acc)
        mapped.append(head + list(row[L.n:]))
    result = _from_spanning_k(m, c + L.l, mapped)
    return KLinearSubspace(c, L.l, result.matrix)


# ---------------------------------------------------------------------------
# Lattice operations
# ---------------------------------------------------------------------------

def subspace_lattice(L1, L2, op: str):
    """intersect / sum / contains on two subspaces of the same kind and ambient."""
    if isinstance(L1, QLinearSubspace) != isinstance(L2, QLinearSubspace):
        raise ValueError("mixed subspace kinds")
    if isinstance(L1, QLinearSubspace):
        if L1.n != L2.n:
            raise ValueError("ambient mismatch")
        if op == "intersect":
            return QLinearSubspace.from_rows(
                L1.n, list(L1.matrix.rows) + list(L2.matrix.rows))
        if op == "sum":
            return QLinearSubspace.from_spanning(
                L1.n, [list(r) for r in L1.spanning_rows() + L2.spanning_rows()])
        if op == "contains":
            return all(L1.contains_point(v) for v in L2.spanning_rows())
        raise ValueError(f"unknown op {op!r}")
    if (L1.n, L1.l) != (L2.n, L2.l):
        raise ValueError("ambient mismatch")
    m = L1.nlambdas
    if op == "intersect":
        rows = [list(r) for r in L1.matrix.rows] + [list(r) for r in L2.matrix.rows]
        return KLinearSubspace.from_equations(m, L1.n, L1.l, rows)
    if op == "sum":
        rows = [list(r) for r in L1.spanning_rows().rows] + \
               [list(r) for r in L2.spanning_rows().rows]
        joined = _from_spanning_k(m, L1.ambient, rows)
        return KLinearSubspace(L1.n, L1.l, joined.matrix)
    if op == "contains":
        return all(L1.contains_point(row) for row in L2.spanning_rows().rows)
    raise ValueError(f"unknown op {op!r}")


def q_contained_in_k(M: QLinearSubspace, L: KLinearSubspace) -> bool:
    """M ⊆ L for a rational M inside a K-linear L over the same ambient."""
    if M.n != L.ambient:
        raise ValueError("ambient mismatch")
    m = L.nlambdas
    for v in M.spanning_rows():
        vec = [ExponentScalar.from_fraction(m, e) for e in v]
        if not L.contains_point(vec):
            return False
    return True


def require_contained(M: QLinearSubspace, L: KLinearSubspace, what="subspace"):
    if not q_contained_in_k(M, L):
        raise NotContained(f"{what} is not contained in the target subspace")


def q_fiber_at_zero(N: QLinearSubspace, n: int) -> QLinearSubspace:
    """{x in V^n : (x, 0) in N} for N inside V^{n+l}."""
    rows = [row[:n] for row in N.matrix.rows]
    return QLinearSubspace.from_rows(n, rows) if rows else QLinearSubspace.full_space(n)


# ---------------------------------------------------------------------------
# Bounded enumeration of Q-subspaces
# ---------------------------------------------------------------------------

def enumerate_q_subspaces(n: int, height: int, min_dim: int = 1, max_dim=None):
    """All Q-subspaces of V^n whose canonical defining rows have |entry| <= height.

    Yields subspaces with min_dim <= dim <= max_dim (default n - 1), in a
    deterministic order: by codimension, then pivot columns, then entries.
    """
    if max_dim is None:
        max_dim = n - 1
    from math import gcd
    for c in range(max(1, n - max_dim), n - min_dim + 1):
        for pivots in _combinations(range(n), c):
            free_cols = [j for j in range(n) if j not in pivots]
            per_row_slots = []
            for i, p in enumerate(pivots):
                slots = [j for j in free_cols if j > p]
                per_row_slots.append(slots)
            ranges = []
            for i, p in enumerate(pivots):
                ranges.append(range(1, height + 1))  # pivot entries
                ranges.extend([range(-height, height + 1)] * len(per_row_slots[i]))
            for values in product(*ranges):
                rows = []
                idx = 0
                ok = True
                for i, p in enumerate(pivots):
                    row = [0] * n
                    row[p] = values[idx]
                    idx += 1
                    for j in per_row_slots[i]:
                        row[j] = values[idx]
                        idx += 1
                    g = 0
                    for v in row:
                        g = gcd(g, v)
                    if g != 1:
                        ok = False
                        break
                    rows.append(row)
                if ok:
                    yield QLinearSubspace(n, QMatrix(rows))


def _combinations(seq, k):
    from itertools import combinations
    return combinations(seq, k)

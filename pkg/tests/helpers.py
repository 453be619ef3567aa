"""Shared corpus generators and independent oracles for the test suite.

Oracles here deliberately avoid the code paths they check: subspace
membership goes through cleared polynomial rows, ranks come from a little
Smith-normal-form routine, and expected values are recomputed from scratch.
"""

from __future__ import annotations

import random
from fractions import Fraction

from powtool.exact_linalg import primitive_int_vector, q_kernel
from powtool.exponent_field import ExponentScalar
from powtool.polynomials import Poly
from powtool.subspaces import KLinearSubspace, QLinearSubspace
from powtool.toric import LaurentIdeal


# ---------------------------------------------------------------------------
# Random scalars and matrices over K
# ---------------------------------------------------------------------------

def random_scalar(rng: random.Random, nlambdas: int, degree: int = 2,
                  coeff_bound: int = 2, allow_denominator: bool = False):
    """Random element of K with small integer polynomial data."""
    num = _random_poly(rng, nlambdas, degree, coeff_bound)
    if allow_denominator and rng.random() < 0.4:
        den = _random_poly(rng, nlambdas, 1, coeff_bound)
        while den.is_zero:
            den = _random_poly(rng, nlambdas, 1, coeff_bound)
        return ExponentScalar(num, den)
    return ExponentScalar(num)


def _random_poly(rng, nvars, degree, coeff_bound):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mon = [0] * nvars
        left = degree
        for i in range(nvars):
            e = rng.randint(0, left)
            mon[i] = e
            left -= e
        terms[tuple(mon)] = terms.get(tuple(mon), 0) + rng.randint(-coeff_bound,
                                                                   coeff_bound)
    return Poly(nvars, {m: Fraction(c) for m, c in terms.items() if c})


def random_k_rows(rng, nlambdas, nrows, ncols, degree=2, coeff_bound=2):
    return [[random_scalar(rng, nlambdas, degree, coeff_bound)
             for _ in range(ncols)] for _ in range(nrows)]


# ---------------------------------------------------------------------------
# Planted K-subspaces with a provable maximal Q-subspace
# ---------------------------------------------------------------------------

def planted_subspace(rng, nlambdas, n, height=2, allow_trivial=True):
    """(L, N) where N is provably the maximal Q-linear subspace of L.

    N is chosen with spanning vectors of height <= 3; L is cut out by K-rows
    of the form sum_t mu_t R_t over the annihilator rows R_t of N, with a
    distinct lambda-monomial mu_t per R_t so the Q-expansion of L's rows
    spans exactly the annihilator of N.  Hence N_L = N by construction.
    """
    monomials = _distinct_monomials(nlambdas)
    while True:
        dim_n = rng.randint(0 if allow_trivial else 1, n - 1)
        if dim_n == 0:
            ann_rows = [[1 if j == i else 0 for j in range(n)]
                        for i in range(n)]
            N = QLinearSubspace.zero_subspace(n)
        else:
            spans = []
            for _ in range(dim_n):
                vec = [rng.randint(-height, height) for _ in range(n)]
                if any(vec):
                    spans.append(vec)
            if len(spans) < dim_n:
                continue
            N = QLinearSubspace.from_spanning(n, spans)
            if N.dim != dim_n:
                continue
            ann_rows = [list(r) for r in N.matrix.int_rows()]
        # the spanning basis of N must itself be small for the brute-force oracle
        if N.dim and max(abs(v) for row in N.spanning_rows() for v in row) > 3:
            continue
        c = len(ann_rows)
        r = rng.randint(1, max(1, c - 1)) if c > 1 else 1
        if c > len(monomials):
            continue
        rows = []
        assigned = rng.sample(monomials, c)
        for i in range(r):
            row = [ExponentScalar.zero(nlambdas)] * n
            for t in range(c):
                if t % r != i:
                    continue
                mu = assigned[t]
                for j in range(n):
                    row[j] = row[j] + mu * ann_rows[t][j]
            if all(e.is_zero for e in row):
                break
            rows.append(row)
        else:
            L = KLinearSubspace.from_equations(nlambdas, n, 0, rows)
            if L.rank == len(rows):
                return L, N


def _distinct_monomials(nlambdas):
    out = [ExponentScalar.one(nlambdas)]
    for i in range(nlambdas):
        lam = ExponentScalar.lam(nlambdas, i)
        out.extend([lam, lam * lam])
    for i in range(nlambdas):
        for j in range(i + 1, nlambdas):
            out.append(ExponentScalar.lam(nlambdas, i) * ExponentScalar.lam(nlambdas, j))
    return out


def brute_force_max_q_subspace(L: KLinearSubspace, height: int = 3):
    """Oracle: span of every integer vector of height <= ``height`` lying in L.

    Membership is decided by exact polynomial arithmetic on cleared rows,
    independently of the Q-expansion algorithm under test.
    """
    from powtool.exact_linalg import _row_to_polys
    from itertools import product
    n = L.ambient
    cleared = [_row_to_polys(list(row)) for row in L.matrix.rows]
    found = []
    for vec in product(range(-height, height + 1), repeat=n):
        if all(v == 0 for v in vec):
            continue
        lead = next(v for v in vec if v != 0)
        if lead < 0:
            continue
        ok = True
        for row in cleared:
            acc = Poly.zero(L.nlambdas)
            for p, v in zip(row, vec):
                if v:
                    acc = acc + p * v
            if not acc.is_zero:
                ok = False
                break
        if ok:
            found.append(vec)
    return QLinearSubspace.from_spanning(n, found)


# ---------------------------------------------------------------------------
# Integer-lattice oracles
# ---------------------------------------------------------------------------

def smith_rank(rows) -> int:
    """Rank via a plain Smith-style diagonalization over Z."""
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    r = c = 0
    while r < len(mat) and c < ncols:
        pivot = None
        best = None
        for i in range(r, len(mat)):
            for j in range(c, ncols):
                if mat[i][j] != 0 and (best is None or abs(mat[i][j]) < best):
                    best = abs(mat[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        mat[r], mat[pi] = mat[pi], mat[r]
        for row in mat:
            row[c], row[pj] = row[pj], row[c]
        while True:
            dirty = False
            for i in range(r + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        mat[r], mat[i] = mat[i], mat[r]
                        dirty = True
            for j in range(c + 1, ncols):
                if mat[r][j]:
                    q = mat[r][j] // mat[r][c]
                    for row in mat:
                        row[j] -= q * row[c]
                    if mat[r][j]:
                        for row in mat:
                            row[c], row[j] = row[j], row[c]
                        dirty = True
            if not dirty:
                break
        rank += 1
        r += 1
        c += 1
    return rank


def random_lattice_rows(rng, n, rank, bound=2):
    """Random integer rows of the requested rank (primitive rows)."""
    while True:
        rows = []
        for _ in range(rank):
            vec = [rng.randint(-bound, bound) for _ in range(n)]
            if any(vec):
                rows.append(list(primitive_int_vector(vec)))
        if len(rows) == rank and smith_rank(rows) == rank:
            return rows


def lattice_ideal(rows, n) -> LaurentIdeal:
    """Binomial ideal y^{b+} - y^{b-} for each lattice row (unsaturated input)."""
    gens = []
    for row in rows:
        pos = tuple(max(v, 0) for v in row)
        neg = tuple(max(-v, 0) for v in row)
        gens.append(Poly(n, {pos: Fraction(1), neg: Fraction(-1)}))
    return LaurentIdeal.make(n, gens)


def coset_ideal_with_point(rng, n, rank, bound=2):
    """(W, point, lattice_rows): a rational coset of a subtorus plus a point on it.

    W is the ideal of w0 * T where T has annihilator lattice spanned by the
    returned rows; the point is w0 * s^D for random rational s and D a basis
    of the kernel of the rows.
    """
    rows = random_lattice_rows(rng, n, rank, bound)
    w0 = [Fraction(rng.randint(1, 3), rng.randint(1, 3)) * rng.choice([1, -1])
          for _ in range(n)]
    gens = []
    for row in rows:
        target = Fraction(1)
        for v, e in zip(w0, row):
            target *= v ** e
        pos = tuple(max(v, 0) for v in row)
        neg = tuple(max(-v, 0) for v in row)
        gens.append(Poly(n, {pos: Fraction(target.denominator),
                             neg: Fraction(-target.numerator)}))
    W = LaurentIdeal.make(n, gens)
    kernel = [primitive_int_vector(v) for v in q_kernel([list(r) for r in rows], n)]
    point = list(w0)
    for vec in kernel:
        s = Fraction(rng.randint(1, 3), rng.randint(1, 3)) * rng.choice([1, -1])
        point = [p * s ** e for p, e in zip(point, vec)]
    return W, tuple(point), rows


# ---------------------------------------------------------------------------
# Special configurations (free, overdetermined) with a planted Q-subspace
# ---------------------------------------------------------------------------

def random_special_config(rng, nlambdas=1, max_n=4):
    """(config, planted_N): a special pair whose L contains the rational N.

    W is a random rational point of the torus (dimension 0), so specialness
    reduces to freeness plus dim L < n; the caller classifies to confirm.
    """
    from powtool.predimension import Configuration
    n = rng.randint(3, max_n)
    L, N = planted_subspace(rng, nlambdas, n, allow_trivial=False)
    point = [Fraction(rng.randint(1, 4), rng.randint(1, 4)) * rng.choice([1, -1])
             for _ in range(n)]
    gens = []
    for i, w in enumerate(point):
        mon = [0] * n
        mon[i] = 1
        gens.append(Poly(n, {tuple(mon): Fraction(w.denominator),
                             tuple([0] * n): Fraction(-w.numerator)}))
    W = LaurentIdeal.make(n, gens)
    return Configuration(L, W), N, tuple(point)


def random_subspace_of(rng, N: QLinearSubspace, height=3):
    """A random nonzero subspace of N with defining height <= ``height``."""
    spans = [list(map(int, r)) for r in N.spanning_rows()]
    if not spans:
        return None
    for _ in range(60):
        k = rng.randint(1, len(spans))
        chosen = rng.sample(spans, k)
        combos = []
        for _ in range(k):
            coeffs = [rng.randint(-1, 1) for _ in chosen]
            vec = [sum(c * row[j] for c, row in zip(coeffs, chosen))
                   for j in range(N.n)]
            if any(vec):
                combos.append(vec)
        if not combos:
            continue
        M = QLinearSubspace.from_spanning(N.n, combos)
        if 1 <= M.dim and M.height <= height:
            return M
    return None

"""Exact rref/kernel/solve over K and the integer-lattice utilities."""

import random
from fractions import Fraction

from powtool.exact_linalg import (KMatrix, QMatrix, canonical_int_rows, hnf_rows,
                                  int_kernel, k_rank, kernel_basis,
                                  primitive_int_vector, q_kernel, q_rank,
                                  q_rref, q_solve, rref, saturate_row_lattice,
                                  solve_linear)
from powtool.exponent_field import ExponentScalar

from helpers import random_k_rows

M = 1
ONE = ExponentScalar.one(M)
ZERO = ExponentScalar.zero(M)
LAM = ExponentScalar.lam(M, 0)


class TestRref:
    def test_identity_fixed(self):
        I3 = KMatrix.identity(M, 3)
        R, rank, piv = rref(I3)
        assert R == I3 and rank == 3 and piv == (0, 1, 2)

    def test_zero_matrix(self):
        Z = KMatrix.zero(M, 2, 4)
        R, rank, piv = rref(Z)
        assert rank == 0 and piv == ()

    def test_rank_one_dependent_rows(self):
        A = KMatrix(M, [[ONE, LAM], [LAM, LAM * LAM]])
        R, rank, piv = rref(A)
        assert rank == 1 and piv == (0,)
        assert R.entry(0, 0) == 1 and R.entry(0, 1) == LAM
        assert R.entry(1, 0).is_zero and R.entry(1, 1).is_zero

    def test_projection_property(self):
        rng = random.Random(2)
        for _ in range(40):
            A = KMatrix(M, random_k_rows(rng, M, rng.randint(1, 3),
                                         rng.randint(1, 4)))
            R, _, _ = rref(A)
            R2, _, _ = rref(R)
            assert R2 == R

    def test_row_span_preserved(self):
        # every original row must satisfy the kernel equations of the rref
        rng = random.Random(3)
        for _ in range(25):
            A = KMatrix(M, random_k_rows(rng, M, 2, 3))
            R, rank, _ = rref(A)
            ker = kernel_basis(KMatrix(M, R.rows[:rank])) if rank else None
            for row in A.rows:
                if ker is None:
                    continue
                for kvec in ker.rows:
                    acc = ZERO
                    for a, b in zip(row, kvec):
                        acc = acc + a * b
                    assert acc.is_zero


class TestKernel:
    def test_identity_has_empty_kernel(self):
        assert kernel_basis(KMatrix.identity(M, 3)).nrows == 0

    def test_zero_row_full_kernel(self):
        kb = kernel_basis(KMatrix.zero(M, 1, 3))
        assert kb.nrows == 3

    def test_single_equation(self):
        kb = kernel_basis(KMatrix(M, [[ONE, LAM]]))
        assert kb.nrows == 1
        assert kb.entry(0, 0) == -LAM and kb.entry(0, 1) == 1

    def test_rank_nullity_500_random(self):
        rng = random.Random(7)
        for _ in range(500):
            nr, nc = rng.randint(1, 4), rng.randint(1, 4)
            A = KMatrix(M, random_k_rows(rng, M, nr, nc, degree=2))
            assert k_rank(A) + kernel_basis(A).nrows == nc

    def test_kernel_annihilates(self):
        rng = random.Random(9)
        for _ in range(40):
            A = KMatrix(M, random_k_rows(rng, M, 2, 4))
            for row in kernel_basis(A).rows:
                assert all(v.is_zero for v in A.matvec(row))


class TestSolve:
    def test_identity_system(self):
        x = solve_linear(KMatrix.identity(M, 2), [LAM, ONE])
        assert x == [LAM, ONE]

    def test_underdetermined_consistent(self):
        x = solve_linear(KMatrix(M, [[ONE, ONE]]), [ZERO])
        assert x is not None and (x[0] + x[1]).is_zero

    def test_inconsistent_returns_none(self):
        x = solve_linear(KMatrix(M, [[ONE], [LAM]]),
                         [ONE, ExponentScalar.from_fraction(M, 2)])
        assert x is None

    def test_none_iff_rank_jump(self):
        rng = random.Random(13)
        for _ in range(120):
            nr, nc = rng.randint(1, 3), rng.randint(1, 3)
            A = KMatrix(M, random_k_rows(rng, M, nr, nc))
            b = [random_k_rows(rng, M, 1, 1)[0][0] for _ in range(nr)]
            aug = KMatrix(M, [list(r) + [v] for r, v in zip(A.rows, b)])
            x = solve_linear(A, b)
            if x is None:
                assert k_rank(aug) > k_rank(A)
            else:
                assert k_rank(aug) == k_rank(A)
                got = A.matvec(x)
                assert all((g - v).is_zero for g, v in zip(got, b))


class TestRationalSide:
    def test_q_rref_rank(self):
        _, rank, _ = q_rref([[2, 4], [1, 2]])
        assert rank == 1

    def test_q_kernel(self):
        assert q_kernel([[1, 1]], 2) == [[Fraction(-1), Fraction(1)]]

    def test_q_solve(self):
        assert q_solve([[2, 0], [0, 4]], [2, 8]) == [1, 2]
        assert q_solve([[1, 1], [1, 1]], [0, 1]) is None


class TestIntegerLattices:
    def test_primitive_vector(self):
        assert primitive_int_vector([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
        assert primitive_int_vector([Fraction(-2), Fraction(4)]) == (1, -2)
        assert primitive_int_vector([0, 0]) == (0, 0)

    def test_canonical_rows_dedup(self):
        assert canonical_int_rows([[2, 3], [4, 6]]) == ((2, 3),)

    def test_int_kernel_is_saturated(self):
        rng = random.Random(17)
        for _ in range(60):
            nr, nc = rng.randint(1, 3), rng.randint(2, 4)
            rows = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
            ker = int_kernel(rows, nc)
            # members really are in the kernel
            for vec in ker:
                assert all(sum(r * v for r, v in zip(row, vec)) == 0
                           for row in rows)
            # dimension matches the rational kernel
            assert len(ker) == len(q_kernel(rows, nc))
            # saturation: rational kernel vectors scaled primitive lie in the
            # integer span (hnf comparison)
            prim = [primitive_int_vector(v) for v in q_kernel(rows, nc)]
            if prim:
                joint = hnf_rows(list(ker) + prim, nc)
                assert joint == hnf_rows(ker, nc)

    def test_saturation_of_index_two_lattice(self):
        sat = saturate_row_lattice([(1, 1), (1, -1)], 2)
        assert hnf_rows(sat, 2) == ((1, 0), (0, 1))

    def test_saturation_of_scaled_row(self):
        sat = saturate_row_lattice([(2, 4)], 2)
        assert hnf_rows(sat, 2) == ((1, 2),)

    def test_hnf_canonical(self):
        assert hnf_rows([(0, 3), (1, 5)], 2) == ((1, 2), (0, 3))
        assert hnf_rows([(2, 4), (0, 0)], 2) == ((2, 4),)

"""Subspace calculus: decomposition, N_L, envelopes, sections, quotients."""

import random
from fractions import Fraction

import pytest

from powtool.exact_linalg import KMatrix, kernel_basis, q_rank
from powtool.exponent_field import ExponentScalar
from powtool.subspaces import (KLinearSubspace, QLinearSubspace,
                               affine_decompose, dim_of, enumerate_q_subspaces,
                               homogeneous_part, maximal_q_subspace,
                               minimal_q_envelope, orth_complement,
                               parameter_projection, q_contained_in_k,
                               q_fiber_at_zero, quotient_characters,
                               quotient_subspace, rational_section,
                               subspace_lattice)

from helpers import planted_subspace, random_k_rows

M = 1
ONE = ExponentScalar.one(M)
ZERO = ExponentScalar.zero(M)
LAM = ExponentScalar.lam(M, 0)


def k_sub(n, l, rows):
    return KLinearSubspace.from_equations(M, n, l, rows)


def random_subspace(rng, n, l=0, max_rows=None):
    nrows = rng.randint(1, max_rows or max(1, n + l - 1))
    return k_sub(n, l, random_k_rows(rng, M, nrows, n + l))


def random_point_of(rng, L):
    """A random K-point of the subspace (combination of spanning rows)."""
    span = L.spanning_rows()
    point = [ZERO] * L.ambient
    for row in span.rows:
        c = ExponentScalar.from_fraction(M, rng.randint(-2, 2)) + \
            LAM * rng.randint(-1, 1)
        point = [p + c * v for p, v in zip(point, row)]
    return point


class TestDims:
    def test_one_equation_in_v3(self):
        assert dim_of(k_sub(3, 0, [[ONE, ZERO, ZERO]])) == 2

    def test_full_space(self):
        assert dim_of(KLinearSubspace.full_space(M, 4)) == 4

    def test_two_independent_equations(self):
        assert dim_of(k_sub(3, 0, [[ONE, LAM, ZERO], [ZERO, ONE, LAM]])) == 1


class TestAffineDecompose:
    def test_homogeneous_gives_zero_section(self):
        L = k_sub(2, 1, [[ONE, LAM, ZERO]])
        _, r = affine_decompose(L)
        assert all(r.entry(i, 0).is_zero for i in range(2))

    def test_single_parameter(self):
        L = k_sub(2, 1, [[ONE, LAM, -ONE]])  # x1 + l1 x2 = a1
        L0, r = affine_decompose(L)
        assert L0.matrix.rows == k_sub(2, 0, [[ONE, LAM]]).matrix.rows
        assert r.entry(0, 0) == 1 and r.entry(1, 0).is_zero

    def test_membership_random(self):
        rng = random.Random(19)
        for _ in range(60):
            n, l = rng.randint(1, 3), rng.randint(1, 2)
            L = random_subspace(rng, n, l)
            L0, r = affine_decompose(L)
            a = random_point_of(rng, L)[n:]
            h = random_point_of(rng, L0)
            ra = r.matvec(a)
            candidate = [hh + rr for hh, rr in zip(h, ra)] + list(a)
            assert L.contains_point(candidate)

    def test_two_sections_differ_by_homogeneous_part(self):
        # two equations sharing a parameter: any valid section lands in L(a)
        L = k_sub(2, 1, [[ONE, ZERO, -ONE], [ZERO, ONE, -LAM]])
        L0, r = affine_decompose(L)
        a = [ONE + LAM]
        ra = r.matvec(a)
        assert L.contains_point(list(ra) + a)


class TestMaximalQSubspace:
    def test_rational_subspace_is_its_own(self):
        L = k_sub(2, 0, [[ONE, ExponentScalar.from_fraction(M, -2)]])
        N = maximal_q_subspace(L)
        assert N.matrix.int_rows() == ((1, -2),)

    def test_generic_line_has_trivial(self):
        assert maximal_q_subspace(k_sub(2, 0, [[ONE, LAM]])).dim == 0

    def test_shared_coefficient_collapses(self):
        N = maximal_q_subspace(k_sub(3, 0, [[ONE, LAM, LAM]]))
        assert N.dim == 1
        assert N.matrix.int_rows() == ((1, 0, 0), (0, 1, 1))

    def test_planted_equality(self):
        rng = random.Random(29)
        for _ in range(40):
            L, N = planted_subspace(rng, 1, rng.randint(2, 4))
            assert maximal_q_subspace(L) == N

    def test_maximality_by_enumeration(self):
        # every Q-subspace of height <= 3 inside L is inside N_L
        from powtool.exact_linalg import _row_to_polys
        from powtool.polynomials import Poly
        for n, rows in ((3, [[ONE, LAM, LAM]]),
                        (4, [[ONE, LAM, ZERO, LAM], [ZERO, ONE, LAM, ONE]])):
            L = k_sub(n, 0, rows)
            N = maximal_q_subspace(L)
            cleared = [_row_to_polys(list(row)) for row in L.matrix.rows]

            def in_l(vec):
                for crow in cleared:
                    acc = Poly.zero(M)
                    for p, v in zip(crow, vec):
                        if v:
                            acc = acc + p * v
                    if not acc.is_zero:
                        return False
                return True

            contained = 0
            for cand in enumerate_q_subspaces(n, 3):
                spans = cand.spanning_rows()
                if all(in_l(v) for v in spans):
                    contained += 1
                    assert all(N.contains_point(v) for v in spans)
            assert contained > 0


class TestMinimalQEnvelope:
    def test_generic_line_fills_plane(self):
        assert minimal_q_envelope(k_sub(2, 0, [[ONE, -LAM]])).dim == 2

    def test_rational_is_its_own_envelope(self):
        L = k_sub(2, 0, [[ONE, ExponentScalar.from_fraction(M, -2)]])
        env = minimal_q_envelope(L)
        assert env == QLinearSubspace.from_rows(2, [[1, -2]])

    def test_zero_subspace(self):
        L = k_sub(2, 0, [[ONE, ZERO], [ZERO, ONE]])
        assert minimal_q_envelope(L).dim == 0

    def test_envelope_contains_subspace(self):
        rng = random.Random(37)
        for _ in range(40):
            L = random_subspace(rng, rng.randint(2, 4))
            env = minimal_q_envelope(L).to_k(M)
            for row in L.spanning_rows().rows:
                assert env.contains_point(row)


class TestRationalSection:
    def test_identity_parameter(self):
        L = k_sub(1, 1, [[ONE, -ONE]])
        q = rational_section(L)
        assert q is not None and q.rows == ((Fraction(1),),)

    def test_transcendental_shift_has_none(self):
        L = k_sub(1, 1, [[ONE, -LAM]])
        assert rational_section(L) is None

    def test_homogeneous_zero_section(self):
        q = rational_section(k_sub(2, 1, [[ONE, LAM, ZERO]]))
        assert q is not None and all(v == 0 for row in q.rows for v in row)

    def test_section_membership(self):
        rng = random.Random(41)
        found = 0
        for _ in range(60):
            n, l = rng.randint(1, 3), rng.randint(1, 2)
            L = random_subspace(rng, n, l)
            q = rational_section(L)
            if q is None:
                continue
            found += 1
            a = random_point_of(rng, L)[n:]
            qa = [sum((ExponentScalar.from_fraction(M, q.entry(j, s)) * a[s]
                       for s in range(l)), ZERO) for j in range(n)]
            assert L.contains_point(qa + list(a))
        assert found > 5


class TestOrthComplement:
    def test_trivial_cases(self):
        assert orth_complement(QLinearSubspace.zero_subspace(2)).dim == 2
        assert orth_complement(QLinearSubspace.full_space(2)).dim == 0

    def test_direct_sum_certificate(self):
        rng = random.Random(43)
        for _ in range(80):
            n = rng.randint(1, 5)
            nrows = rng.randint(0, n)
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(nrows)]
            Msub = QLinearSubspace.from_rows(n, rows)
            comp = orth_complement(Msub)
            stacked = [list(r) for r in Msub.matrix.rows] + \
                      [list(r) for r in comp.matrix.rows]
            assert q_rank(stacked) == n if stacked else n == 0
            assert subspace_lattice(Msub, comp, "intersect").dim == 0
            assert subspace_lattice(Msub, comp, "sum").dim == n

    def test_example_line(self):
        Msub = QLinearSubspace.from_rows(2, [[1, 1]])
        comp = orth_complement(Msub)
        assert subspace_lattice(Msub, comp, "intersect").dim == 0
        assert subspace_lattice(Msub, comp, "sum").dim == 2


class TestQuotientSubspace:
    def test_zero_is_relabeling(self):
        L = k_sub(2, 0, [[ONE, -LAM]])
        Q = quotient_subspace(L, QLinearSubspace.zero_subspace(2))
        assert Q.dim == L.dim and Q.n == 2

    def test_full_ambient_quotient(self):
        L = KLinearSubspace.full_space(M, 3)
        Msub = QLinearSubspace.from_rows(3, [[1, 0, 0]])
        Q = quotient_subspace(L, Msub)
        assert Q.n == 3 - Msub.dim and Q.dim == 3 - Msub.dim

    def test_diagonal_example(self):
        L = k_sub(2, 0, [[ONE, -LAM]])
        Mdiag = QLinearSubspace.from_rows(2, [[1, -1]])
        Q = quotient_subspace(L, Mdiag)
        assert Q.dim == 1 and Q.n == 1

    def test_rank_nullity_of_quotient(self):
        rng = random.Random(47)
        for _ in range(50):
            n = rng.randint(2, 4)
            L = random_subspace(rng, n)
            rows = [[rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(rng.randint(1, n - 1))]
            Msub = QLinearSubspace.from_rows(n, rows)
            MK = Msub.to_k(M)
            Q = quotient_subspace(L, Msub)
            inter = subspace_lattice(L, MK, "intersect")
            assert Q.dim == L.dim - inter.dim

    def test_decomposition_identity_samples(self):
        # points of L map into L/M; fibers differ by L ∩ M
        rng = random.Random(53)
        for _ in range(30):
            n = rng.randint(2, 4)
            L = random_subspace(rng, n)
            rows = [[rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(rng.randint(1, n - 1))]
            Msub = QLinearSubspace.from_rows(n, rows)
            chars = quotient_characters(Msub)
            Q = quotient_subspace(L, Msub)
            x = random_point_of(rng, L)
            image = []
            for s in chars:
                acc = ZERO
                for c, v in zip(s, x):
                    acc = acc + v * c
                image.append(acc)
            assert Q.contains_point(image)


class TestLattice:
    def test_contains_full(self):
        A = KLinearSubspace.full_space(M, 2)
        B = k_sub(2, 0, [[ONE, LAM]])
        assert subspace_lattice(A, B, "contains") is True
        assert subspace_lattice(B, A, "contains") is False

    def test_intersect_self(self):
        B = k_sub(2, 0, [[ONE, LAM]])
        assert subspace_lattice(B, B, "intersect") == B

    def test_sum_of_two_q_lines(self):
        q1 = QLinearSubspace.from_spanning(2, [(1, 0)])
        q2 = QLinearSubspace.from_spanning(2, [(0, 1)])
        assert subspace_lattice(q1, q2, "sum").dim == 2

    def test_modular_identity_500_random(self):
        rng = random.Random(59)
        for _ in range(500):
            n = rng.randint(2, 4)
            L1 = k_sub(n, 0, random_k_rows(rng, M, rng.randint(1, n - 1), n,
                                           degree=1))
            L2 = k_sub(n, 0, random_k_rows(rng, M, rng.randint(1, n - 1), n,
                                           degree=1))
            s = subspace_lattice(L1, L2, "sum")
            i = subspace_lattice(L1, L2, "intersect")
            assert s.dim == L1.dim + L2.dim - i.dim


class TestParametrizedIdentities:
    def test_n_of_homogeneous_equals_fiber_of_n(self):
        rng = random.Random(61)
        for _ in range(60):
            n, l = rng.randint(1, 3), rng.randint(1, 2)
            L = random_subspace(rng, n, l)
            lhs = maximal_q_subspace(homogeneous_part(L))
            rhs = q_fiber_at_zero(
                maximal_q_subspace(L.as_unparametrized()), n)
            assert lhs == rhs

    def test_projection_is_subspace_of_vl(self):
        L = k_sub(2, 1, [[ONE, LAM, -ONE]])
        proj = parameter_projection(L)
        assert proj.n == 1 and proj.dim == 1


class TestEnumeration:
    def test_counts_small(self):
        assert len(list(enumerate_q_subspaces(2, 1))) == 4
        subs = list(enumerate_q_subspaces(2, 2))
        assert all(1 <= s.dim <= 1 for s in subs)
        assert len(subs) == len(set(subs))

    def test_all_canonical(self):
        for s in enumerate_q_subspaces(3, 2):
            rebuilt = QLinearSubspace.from_rows(3, [list(r) for r in s.matrix.rows])
            assert rebuilt == s
            assert s.height <= 2

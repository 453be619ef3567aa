"""Exact arithmetic in K, Q-basis extraction, and the real embedding."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from powtool.errors import NearSingularEvaluation
from powtool.exponent_field import (EmbeddingSpec, ExponentScalar,
                                    numeric_embed, qbasis_decompose,
                                    scalar_arith)

from helpers import random_scalar

SQRT2 = "1.41421356237309504880168872420969807857"


def lam(i=0, m=1):
    return ExponentScalar.lam(m, i)


class TestScalarArith:
    def test_additive_inverse(self):
        assert scalar_arith(lam(), lam(), "sub").is_zero

    def test_multiplicative_inverse(self):
        assert scalar_arith(1 / lam(), lam(), "mul") == 1

    def test_half_sum_recovers_generator(self):
        half = ExponentScalar.from_fraction(1, Fraction(1, 2))
        a = (lam() + 1) * half
        b = (lam() - 1) * half
        assert scalar_arith(a, b, "add") == lam()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            scalar_arith(lam(), ExponentScalar.zero(1), "div")

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            scalar_arith(lam(), lam(), "pow")

    def test_field_axioms_on_random_scalars(self):
        rng = random.Random(11)
        for _ in range(150):
            a = random_scalar(rng, 2, allow_denominator=True)
            b = random_scalar(rng, 2, allow_denominator=True)
            c = random_scalar(rng, 2, allow_denominator=True)
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            if not b.is_zero:
                assert (a / b) * b == a

    def test_cancellation_to_polynomial(self):
        a = (lam() ** 2 - 1) / (lam() - 1)
        assert a == lam() + 1


class TestCanonicalForm:
    def test_zero_is_zero_over_one(self):
        z = ExponentScalar.zero(1)
        assert z.num.is_zero and z.den.constant_value() == 1

    def test_denominator_positive_leading(self):
        from powtool.polynomials import GRLEX
        s = lam() / (1 - lam())
        assert s.den.leading(GRLEX)[1] > 0
        assert s == -(lam() / (lam() - 1))

    def test_idempotent_normalization(self):
        rng = random.Random(5)
        for _ in range(100):
            s = random_scalar(rng, 2, allow_denominator=True)
            again = ExponentScalar(s.num, s.den)
            assert again == s
            assert again.num == s.num and again.den == s.den

    def test_content_reduction(self):
        two = ExponentScalar.from_fraction(1, 2)
        s = (lam() * 2 + 2) / (two * 2)
        assert s == (lam() + 1) / 2


class TestQBasisDecompose:
    def test_rationals_span_dimension_one(self):
        two = ExponentScalar.from_fraction(1, 2)
        three = ExponentScalar.from_fraction(1, 3)
        basis, coords = qbasis_decompose([two, three])
        assert len(basis) == 1 and basis[0] == 1
        assert coords == [[Fraction(2)], [Fraction(3)]]

    def test_independent_generators_identity_coords(self):
        one = ExponentScalar.one(1)
        basis, coords = qbasis_decompose([one, lam()])
        assert basis == [one, lam()]
        assert coords == [[1, 0], [0, 1]]

    def test_rank_two_family(self):
        two = ExponentScalar.from_fraction(1, 2)
        basis, coords = qbasis_decompose([lam() + 1, lam() - 1, two])
        assert len(basis) == 2
        mat = [[Fraction(c) for c in row] for row in coords]
        from powtool.exact_linalg import q_rank
        assert q_rank(mat) == 2

    def test_empty_family(self):
        assert qbasis_decompose([]) == ([], [])

    def test_roundtrip_random(self):
        rng = random.Random(23)
        for _ in range(120):
            fam = [random_scalar(rng, 2, allow_denominator=True)
                   for _ in range(rng.randint(1, 5))]
            basis, coords = qbasis_decompose(fam)
            for s, row in zip(fam, coords):
                acc = ExponentScalar.zero(2)
                for c, b in zip(row, basis):
                    acc = acc + b * c
                assert acc == s
            # basis is Q-linearly independent: decomposing it gives identity
            _, bcoords = qbasis_decompose(basis)
            for i, row in enumerate(bcoords):
                assert all(c == (1 if j == i else 0) for j, c in enumerate(row))


class TestNumericEmbed:
    def test_rational_constant(self):
        emb = EmbeddingSpec((SQRT2,), 128)
        v = numeric_embed(ExponentScalar.from_fraction(1, Fraction(1, 2)), emb)
        assert v == 0.5

    def test_projection_of_generator(self):
        emb = EmbeddingSpec((SQRT2,), 128)
        v = numeric_embed(lam(), emb)
        with mp.workprec(200):
            assert abs(v - mp.mpf(SQRT2)) < mp.mpf(2) ** -120

    def test_simplification_before_evaluation(self):
        emb = EmbeddingSpec(("3",), 128)
        v = numeric_embed((lam() ** 2 - 1) / (lam() - 1), emb)
        with mp.workprec(200):
            assert abs(v - 4) < mp.mpf(2) ** -120

    def test_near_singular_denominator(self):
        emb = EmbeddingSpec(("1." + "0" * 40 + "1",), 128)
        with pytest.raises(NearSingularEvaluation):
            numeric_embed(1 / (lam() - 1), emb)

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            EmbeddingSpec((SQRT2,), 32)

    def test_embedding_homomorphism(self):
        rng = random.Random(31)
        emb = EmbeddingSpec((SQRT2, "0.693147180559945309417232121458"), 96)
        bound = mp.mpf(2) ** (-96 + 12)
        checked = 0
        for _ in range(1000):
            a = random_scalar(rng, 2, allow_denominator=True)
            b = random_scalar(rng, 2, allow_denominator=True)
            op = rng.choice(["add", "sub", "mul", "div"])
            if op == "div" and b.is_zero:
                op = "add"
            try:
                combined = numeric_embed(scalar_arith(a, b, op), emb)
                va, vb = numeric_embed(a, emb), numeric_embed(b, emb)
            except NearSingularEvaluation:
                continue
            with mp.workprec(192):
                direct = {"add": va + vb, "sub": va - vb,
                          "mul": va * vb,
                          "div": va / vb if vb != 0 else None}[op]
                if direct is None:
                    continue
                scale = 1 + abs(combined) + abs(direct)
                assert abs(combined - direct) <= bound * scale
            checked += 1
        assert checked > 800

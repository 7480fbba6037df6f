import cmath
from fractions import Fraction

import pytest

from qiso.scalars import Cyclo, Scalar, ThetaLin


class TestCyclo:
    def test_rational_roundtrip(self):
        q = Cyclo.rational(Fraction(3, 7))
        assert q.is_rational()
        assert q.rational_value() == Fraction(3, 7)

    def test_root_of_unity_order(self):
        z = Cyclo.root(Fraction(1, 5))
        p = z
        for _ in range(4):
            p = p * z
        assert p == Cyclo.rational(1)

    def test_primitive_root_sum(self):
        # 1 + z + z^2 = 0 for a primitive cube root z
        z = Cyclo.root(Fraction(1, 3))
        assert (Cyclo.rational(1) + z + z * z).is_zero()

    def test_mixed_order_arithmetic(self):
        a = Cyclo.root(Fraction(1, 3))
        b = Cyclo.root(Fraction(1, 4))
        prod = a * b
        assert abs(prod.numeric() - a.numeric() * b.numeric()) < 1e-12

    def test_conj_inverse_on_roots(self):
        z = Cyclo.root(Fraction(2, 7))
        assert (z * z.conj()) == Cyclo.rational(1)

    def test_inv(self):
        x = Cyclo.root(Fraction(1, 6)) + Cyclo.rational(2)
        assert (x * x.inv()) == Cyclo.rational(1)

    def test_numeric(self):
        z = Cyclo.root(Fraction(1, 8))
        assert abs(z.numeric() - cmath.exp(2j * cmath.pi / 8)) < 1e-12


class TestThetaLin:
    def test_arithmetic(self):
        a = ThetaLin(Fraction(1, 2), 3)
        b = ThetaLin(0, -1)
        assert a + b == ThetaLin(Fraction(1, 2), 2)
        assert a - a == ThetaLin(0, 0)
        assert a * 2 == ThetaLin(1, 6)

    def test_numeric(self):
        a = ThetaLin(Fraction(1, 4), 2)
        assert abs(a.numeric(0.3) - (0.25 + 0.6)) < 1e-12


class TestScalar:
    def test_exponential_group_law(self):
        a = Scalar.exponential(ThetaLin(0, 1))
        b = Scalar.exponential(ThetaLin(0, 2))
        assert (a * b - Scalar.exponential(ThetaLin(0, 3))).is_zero()

    def test_phase_conj_is_inverse(self):
        lam = Scalar.phase(1)
        assert (lam * lam.conj() - Scalar.one()).is_zero()
        assert (lam * lam.inv() - Scalar.one()).is_zero()

    def test_rational_constant_phase(self):
        # e(1/2) = -1 exactly
        s = Scalar.exponential(ThetaLin(Fraction(1, 2), 0))
        assert s.is_rational()
        assert s.rational_value() == Fraction(-1)

    def test_specialize_cube_root(self):
        lam = Scalar.exponential(ThetaLin(0, 1)).specialize(Fraction(1, 3))
        acc = lam
        for _ in range(2):
            acc = acc * lam
        assert (acc - Scalar.one()).is_zero()
        assert not (lam - Scalar.one()).is_zero()

    def test_specialize_half_commutes_with_numeric(self):
        s = Scalar.rational(Fraction(2, 3)) * Scalar.exponential(ThetaLin(0, -2))
        th = Fraction(1, 5)
        direct = s.numeric(float(th))
        via_spec = s.specialize(th).numeric(float(th))
        assert abs(direct - via_spec) < 1e-12

    def test_sum_distinct_frequencies_nonzero(self):
        s = Scalar.exponential(ThetaLin(0, 1)) - Scalar.exponential(ThetaLin(0, 2))
        assert not s.is_zero()
        assert not s.is_rational()

    def test_numeric_matches_cmath(self):
        s = Scalar.exponential(ThetaLin(Fraction(1, 3), 2))
        th = 0.1234
        want = cmath.exp(2j * cmath.pi * (1 / 3 + 2 * th))
        assert abs(s.numeric(th) - want) < 1e-12

    def test_is_unit_and_inv(self):
        s = Scalar.rational(Fraction(-5, 2)) * Scalar.exponential(ThetaLin(0, 4))
        assert s.is_unit()
        assert (s * s.inv() - Scalar.one()).is_zero()
        two_terms = Scalar.one() + Scalar.exponential(ThetaLin(0, 1))
        assert not two_terms.is_unit()

    def test_coerce(self):
        assert (Scalar.coerce(3) - Scalar.rational(3)).is_zero()
        assert (Scalar.coerce(Fraction(1, 2)) * 2 - Scalar.one()).is_zero()

    def test_render_stable(self):
        s = Scalar.exponential(ThetaLin(0, -1))
        assert s.render() == "e(-t)"

from fractions import Fraction

import pytest

from qiso.freealg import Element, FreeAlgebra, TensorAlgebra, substitute, substitute_factors, tensor
from qiso.scalars import Scalar, ThetaLin


@pytest.fixture
def alg():
    return FreeAlgebra(["a", "b"])


class TestFreeAlgebra:
    def test_gen_and_star(self, alg):
        a = alg.gen("a")
        assert a.star().star().render() == a.render()
        assert a.render() == "a"
        assert a.star().render() == "a*"

    def test_selfadjoint_star_is_identity(self):
        alg = FreeAlgebra(["x"], selfadjoint={"x"})
        x = alg.gen("x")
        assert (x.star() - x).is_zero()

    def test_noncommutative_product(self, alg):
        a, b = alg.gen("a"), alg.gen("b")
        assert not (a * b - b * a).is_zero()

    def test_star_antimultiplicative(self, alg):
        a, b = alg.gen("a"), alg.gen("b")
        lam = Scalar.exponential(ThetaLin(0, 1))
        x = a * b * lam
        assert ((a * b * lam).star() - b.star() * a.star() * lam.conj()).is_zero()

    def test_unit_and_zero(self, alg):
        one = Element.unit(alg)
        z = Element.zero(alg)
        a = alg.gen("a")
        assert (one * a - a).is_zero()
        assert (a + z - a).is_zero()
        assert z.is_zero()

    def test_deg(self, alg):
        a, b = alg.gen("a"), alg.gen("b")
        assert (a * b * a.star()).deg() == 3
        assert Element.unit(alg).deg() == 0

    def test_substitute_homomorphism(self, alg):
        tgt = FreeAlgebra(["x", "y"])
        images = {"a": tgt.gen("x") + tgt.gen("y"), "b": tgt.gen("y")}
        a, b = alg.gen("a"), alg.gen("b")
        lhs = substitute(a * b - b * a, images)
        x, y = tgt.gen("x"), tgt.gen("y")
        want = (x + y) * y - y * (x + y)
        assert (lhs - want).is_zero()

    def test_substitute_starred_letters(self, alg):
        tgt = FreeAlgebra(["x"])
        images = {"a": tgt.gen("x"), "b": tgt.gen("x")}
        img = substitute(alg.gen("a", star=True), images)
        assert (img - tgt.gen("x").star()).is_zero()


class TestTensor:
    def test_componentwise_product(self, alg):
        other = FreeAlgebra(["c"])
        a = alg.gen("a")
        c = other.gen("c")
        t = tensor(a, c)
        sq = t * t
        want = tensor(a * a, c * c)
        assert (sq - want).is_zero()

    def test_star_componentwise(self, alg):
        other = FreeAlgebra(["c"])
        t = tensor(alg.gen("a"), other.gen("c"))
        want = tensor(alg.gen("a").star(), other.gen("c").star())
        assert (t.star() - want).is_zero()

    def test_substitute_factors(self, alg):
        other = FreeAlgebra(["c"])
        a, b, c = alg.gen("a"), alg.gen("b"), other.gen("c")
        t = tensor(a, c)
        swapped = substitute_factors(t, [{"a": b, "b": a}, None])
        assert (swapped - tensor(b, c)).is_zero()

    def test_specialize_distributes(self, alg):
        lam = Scalar.exponential(ThetaLin(0, 3))
        x = alg.gen("a") * lam
        sp = x.specialize(Fraction(1, 3))
        assert (sp - alg.gen("a")).is_zero()

from fractions import Fraction

import pytest

from qiso.freealg import Element
from qiso.presfile import load_data, loads
from qiso.scalars import Scalar, ThetaLin

SAMPLE = """
# a sample presentation
[generators]
U
P selfadjoint

[relations]
U U* - 1
U* U - 1
P P - P

[coproduct]
U : U (x) U P + U* (x) U (1 - P)
P : P (x) P + U (1 - P) U* (x) (1 - P)

[counit]
U : 1
P : 1
"""


class TestLoads:
    def test_generators(self):
        P = loads(SAMPLE, name="sample")
        assert P.algebra.names == ["U", "P"]
        assert "P" in P.algebra.selfadjoint
        assert "U" not in P.algebra.selfadjoint

    def test_relations_count(self):
        P = loads(SAMPLE)
        assert len(P.relations) == 3

    def test_coproduct_lives_in_tensor_square(self):
        P = loads(SAMPLE)
        dU = P.coproduct["U"]
        assert len(dU.ambient.factors) == 2
        assert not dU.is_zero()

    def test_counit_values(self):
        P = loads(SAMPLE)
        assert (P.counit["U"] - Scalar.one()).is_zero()

    def test_theta_specializes_coefficients(self):
        text = "[generators]\nU\n[relations]\ne(t) U - U\n"
        generic = loads(text)
        assert len(generic.relations) == 1
        half = loads(text, theta=Fraction(1, 2))
        # e(t) becomes -1, so the relation is -2U, still one relation
        (rel,) = half.relations
        U = half.algebra.gen("U")
        assert (rel - U * Scalar.rational(-2)).is_zero()

    def test_comments_and_blanks_ignored(self):
        text = "# c\n\n[generators]\nA\n# c2\n\n[relations]\nA A* - 1\n"
        P = loads(text)
        assert len(P.relations) == 1


class TestLoadData:
    @pytest.mark.parametrize(
        "resource, ngens, nrels",
        [
            ("circle.pres", 2, 3),
            ("circle_derived.pres", 2, 6),
            ("sphere.pres", 9, 33),
            ("torus_row1.pres", 8, 18),
            ("torus_row2.pres", 8, 18),
            ("torus_mixed.pres", 8, 16),
            ("torus_exchange.pres", 8, 4),
            ("torus_model.pres", 8, 51),
            ("double_torus.pres", 4, 18),
        ],
    )
    def test_bundled_presentations(self, resource, ngens, nrels):
        P = load_data(resource)
        assert len(P.algebra.names) == ngens
        assert len(P.relations) == nrels

from fractions import Fraction

import pytest

from qiso.freealg import Element, FreeAlgebra
from qiso.rewrite import (
    UNDECIDED,
    YES,
    DegreeOverflow,
    RuleSet,
    ideal_member,
    render_certificate,
    verify_certificate,
)
from qiso.scalars import Scalar, ThetaLin


@pytest.fixture
def torus_rules():
    alg = FreeAlgebra(["U", "V"])
    U, V = alg.gen("U"), alg.gen("V")
    one = Element.unit(alg)
    lam = Scalar.exponential(ThetaLin(0, 1))
    rels = [
        U * U.star() - one,
        U.star() * U - one,
        V * V.star() - one,
        V.star() * V - one,
        V * U - U * V * lam.conj(),
        U.star() * V.star() - V.star() * U.star() * lam,
    ]
    return alg, RuleSet(alg, rels, cap=8), rels


class TestNormalForm:
    def test_unitarity_collapses(self, torus_rules):
        alg, rules, _ = torus_rules
        U = alg.gen("U")
        nf = rules.normal_form(U * U.star() * U)
        assert (nf - U).is_zero()

    def test_exchange_phase(self, torus_rules):
        alg, rules, _ = torus_rules
        U, V = alg.gen("U"), alg.gen("V")
        lam_bar = Scalar.exponential(ThetaLin(0, -1))
        nf = rules.normal_form(V * U)
        assert (nf - U * V * lam_bar).is_zero()

    def test_confluence_on_long_words(self, torus_rules):
        alg, rules, _ = torus_rules
        U, V = alg.gen("U"), alg.gen("V")
        # two different bracketings of the same product reduce identically
        w1 = rules.normal_form((V * U) * (V * U))
        w2 = rules.normal_form(V * (U * V) * U)
        assert (w1 - w2).is_zero()

    def test_degree_overflow(self, torus_rules):
        alg, rules, _ = torus_rules
        U = alg.gen("U")
        word = Element.unit(alg)
        for _ in range(9):
            word = word * U
        with pytest.raises(DegreeOverflow):
            rules.normal_form(word)


class TestMembership:
    def test_yes_with_certificate(self, torus_rules):
        alg, _rules, rels = torus_rules
        U, V = alg.gen("U"), alg.gen("V")
        lam = Scalar.exponential(ThetaLin(0, 1))
        p = U * V - V * U * lam
        res = ideal_member(p, rels, cap=8)
        assert res.status == YES
        assert verify_certificate(p, rels, res.certificate)
        assert render_certificate(rels, res.certificate, alg)

    def test_undecided_for_nonmember(self, torus_rules):
        alg, _rules, rels = torus_rules
        U, V = alg.gen("U"), alg.gen("V")
        res = ideal_member(U * V - V * U, rels, cap=6)
        assert res.status == UNDECIDED

    def test_zero_is_member(self, torus_rules):
        alg, _rules, rels = torus_rules
        res = ideal_member(Element.zero(alg), rels, cap=4)
        assert res.status == YES

    def test_certificates_survive_completion(self):
        # regression: rules produced while completing S-elements must carry
        # correct certificates (the reduction delta enters with a minus sign)
        alg = FreeAlgebra(["Q11", "Q12", "Q21", "Q22"])
        q = {n: alg.gen(n) for n in alg.names}
        r3 = (
            q["Q11"] * q["Q22"] + q["Q12"] * q["Q21"]
            - q["Q21"] * q["Q12"] - q["Q22"] * q["Q11"]
        )
        r6 = (
            q["Q22"] * q["Q11"] + q["Q12"] * q["Q21"]
            - q["Q21"] * q["Q12"] - q["Q11"] * q["Q22"]
        )
        comm = q["Q11"] * q["Q22"] - q["Q22"] * q["Q11"]
        res = ideal_member(comm, [r3, r6], cap=2)
        assert res.status == YES
        assert verify_certificate(comm, [r3, r6], res.certificate)

from fractions import Fraction

import pytest

from qiso.catalog import (
    BUILDERS,
    build,
    commutative_torus,
    eight_block_model,
    family_elements,
    matrix_m,
    nf_model_coherence,
    torus_block,
)
from qiso.freealg import Element
from qiso.scalars import Scalar, ThetaLin


class TestBuilders:
    def test_registry(self):
        assert sorted(BUILDERS) == [
            "circle",
            "deformation",
            "double-torus",
            "sphere",
            "torus",
        ]

    def test_unknown_scenario(self):
        with pytest.raises(KeyError):
            build("nope")


class TestTorusHelpers:
    def test_torus_block_phase(self):
        blk = torus_block()
        U, V = blk.gen("U"), blk.gen("V")
        lam = Scalar.exponential(ThetaLin(0, 1))
        assert (U * V - V * U * lam).is_zero()

    def test_commutative_torus(self):
        blk = commutative_torus()
        U, V = blk.gen("U"), blk.gen("V")
        assert (U * V - V * U).is_zero()

    def test_eight_block_twists(self):
        ds = eight_block_model()
        lam2 = Scalar.exponential(ThetaLin(0, 2))
        for k in range(8):
            u1, u2 = ds.block_gen(k, 0), ds.block_gen(k, 1)
            comm = u1 * u2 - u2 * u1 * (lam2 if k % 2 else Scalar.one())
            assert comm.is_zero(), f"block {k + 1}"

    def test_family_elements_are_partial_isometries(self):
        ds = eight_block_model()
        elems = family_elements(ds)
        for name, g in elems.items():
            assert (g * g.star() * g - g).is_zero(), name

    def test_matrix_m_shape(self):
        ds = eight_block_model()
        M = matrix_m(family_elements(ds))
        assert len(M) == 4 and all(len(row) == 4 for row in M)


class TestScenarioHelpers:
    def test_normal_form_torus(self, scenario_cache):
        sc, _ = scenario_cache("torus")
        assert sc.normal_form("V U") == "e(-t) * U V"
        assert sc.normal_form("U U* V") == "V"

    def test_membership_torus(self, scenario_cache):
        sc, _ = scenario_cache("torus")
        status, cert = sc.membership("U V - e(t) V U")
        assert status == "YES"
        assert cert

    def test_membership_undecided(self, scenario_cache):
        sc, _ = scenario_cache("torus")
        status, cert = sc.membership("U V - V U")
        assert status == "UNDECIDED"
        assert cert is None

    def test_circle_membership(self, scenario_cache):
        sc, _ = scenario_cache("circle")
        status, _ = sc.membership("A B* + B A*")
        assert status == "YES"

    def test_constants_embed_conventions(self, scenario_cache):
        sc, _ = scenario_cache("torus")
        assert sc.constants["sigma"] == -1
        assert sc.constants["theta"] == "generic"


class TestCoherenceHelper:
    @pytest.mark.parametrize("c", [0, -1, -2])
    def test_short_words(self, c):
        assert nf_model_coherence(c, max_len=3) == 84

    def test_specialized(self):
        assert nf_model_coherence(-1, theta=Fraction(1, 3), max_len=3) == 84


class TestSuites:
    """Full suites at generic parameter; reports are cached for the session
    and shared with the acceptance tests."""

    @pytest.mark.parametrize(
        "name", ["circle", "sphere", "torus", "double-torus", "deformation"]
    )
    def test_suite_green(self, scenario_cache, name):
        _sc, report = scenario_cache(name)
        bad = [r for r in report.results if r.status not in ("PASS", "SKIPPED")]
        assert not bad, [(r.name, r.status, r.detail) for r in bad]

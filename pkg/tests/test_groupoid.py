from fractions import Fraction

import pytest

from sturmian.quadratics import QuadraticIrrational
from sturmian.words import (
    OrbitPoint,
    branch_point,
    cylinder_arc,
    intersect_arcs,
    language,
    recurrence_bound,
)
from sturmian.cover import thread_of
from sturmian.groupoid import (
    Arrow,
    bisection_arrows,
    check_witness,
    compose,
    dad_witness,
    degenerate_cover_chain,
    unit,
)

FIB = QuadraticIrrational(3, -1, 5, 2)
SQRT2M1 = QuadraticIrrational(-1, 1, 2, 1)
OM = branch_point(FIB)


def orbit_arrow(j, K=2, L=5):
    """Cocycle-one arrow with range iota(sigma^j omega), source one step on."""
    rng = thread_of(FIB, OM.shift(j), K, L)
    src = thread_of(FIB, OM.shift(j + 1), K, L)
    return Arrow(rng, 1, src, (1, 0))


class TestArrows:
    def test_witness_validation(self):
        th = thread_of(FIB, OM, 2, 5)
        with pytest.raises(ValueError):
            Arrow(th, 1, th, (1, 0))  # omega is aperiodic
        with pytest.raises(ValueError):
            Arrow(th, 2, th, (1, 0))  # cocycle mismatch

    def test_inverse_cancels(self):
        g = orbit_arrow(0)
        assert compose(g, g.inverse()) == Arrow(g.target, 0, g.target, (1, 1))
        assert compose(g.inverse(), g) == Arrow(g.source, 0, g.source, (1, 1))

    def test_units(self):
        g = orbit_arrow(0)
        assert compose(g, unit(g.source)) == g
        assert compose(unit(g.target), g) == g

    def test_cocycle_additivity(self):
        assert compose(orbit_arrow(0), orbit_arrow(1)).cocycle == 2

    def test_associativity(self):
        g, h, k = orbit_arrow(0), orbit_arrow(1), orbit_arrow(2)
        assert compose(compose(g, h), k) == compose(g, compose(h, k))

    def test_composability_check(self):
        g = orbit_arrow(0)
        with pytest.raises(ValueError):
            compose(g, g)

    def test_principal_on_units(self):
        # an arrow with equal source and target must have cocycle zero:
        # any nonzero witness fails the aperiodicity of base points
        th = thread_of(FIB, OrbitPoint(FIB, Fraction(1, 2)), 2, 5)
        assert unit(th).cocycle == 0
        for k, l in [(1, 0), (2, 1), (3, 1)]:
            if k != l:
                with pytest.raises(ValueError):
                    Arrow(th, k - l, th, (k, l))


class TestBisection:
    def test_report(self):
        rep = bisection_arrows(FIB, 2, 5, 6)
        assert len(rep.arrows) == 6
        assert rep.sources_distinct
        assert rep.range_omits_one_omega
        assert rep.cocycles_all_one

    def test_sources_cover_the_chain(self):
        rep = bisection_arrows(FIB, 2, 5, 4)
        sources = {a.source for a in rep.arrows}
        chain = {thread_of(FIB, OrbitPoint(FIB, FIB * (-j), "R"), 2, 5) for j in range(4)}
        assert sources == chain


class TestDadWitness:
    def test_fibonacci_smallest(self):
        w = dad_witness(FIB, [1])
        assert w.lbar == 1
        assert (w.mu, w.nu) == ("00", "01")
        assert w.beta_mu == recurrence_bound(FIB, "00")

    def test_validation(self):
        with pytest.raises(ValueError):
            dad_witness(FIB, [])
        with pytest.raises(ValueError):
            dad_witness(FIB, [0])
        with pytest.raises(ValueError):
            dad_witness(FIB, [-1, 2])

    @pytest.mark.parametrize("alpha", [FIB, SQRT2M1])
    @pytest.mark.parametrize("values", [(1,), (1, 2), (1, 2, 3)])
    def test_cylinder_arcs_disjoint(self, alpha, values):
        w = dad_witness(alpha, values)
        for wm in w.mu_shifts:
            for wn in w.nu_shifts:
                am = cylinder_arc(alpha, wm)
                an = cylinder_arc(alpha, wn)
                assert intersect_arcs(am, an) is None

    def test_words_admissible_with_distinct_suffixes(self):
        for values in [(1,), (2,), (1, 3)]:
            w = dad_witness(FIB, values)
            assert w.mu in language(FIB, 2 * w.lbar)
            assert w.nu in language(FIB, 2 * w.lbar)
            assert w.mu[w.lbar :] != w.nu[w.lbar :]


class TestCheckWitness:
    def test_window_precondition(self):
        w = dad_witness(FIB, [1])
        with pytest.raises(ValueError):
            check_witness(FIB, w, 3)

    @pytest.mark.parametrize("alpha", [FIB, SQRT2M1])
    @pytest.mark.parametrize("values", [(1,), (1, 2), (1, 2, 3)])
    def test_passes_with_bounded_chains(self, alpha, values):
        w = dad_witness(alpha, values)
        window = 2 * w.lbar * max(w.beta_mu, w.beta_nu)
        chk = check_witness(alpha, w, window)
        assert chk.passed
        assert chk.max_chain_v <= w.beta_mu
        assert chk.max_chain_u <= w.beta_nu
        assert chk.cocycle_bound <= 2 * w.lbar * max(w.beta_mu, w.beta_nu)

    def test_every_window_is_covered(self):
        w = dad_witness(FIB, [1])
        chk = check_witness(FIB, w, 20)
        assert chk.covered and chk.max_first_hit <= w.beta_mu

    def test_single_set_cover_has_unbounded_chains(self):
        for values in [(1,), (1, 2)]:
            w = dad_witness(FIB, values)
            window = 2 * w.lbar * max(w.beta_mu, w.beta_nu)
            deg = degenerate_cover_chain(FIB, values, window)
            assert deg > window // 2
            assert deg > check_witness(FIB, w, window).max_chain_v

    def test_report_dict_schema(self):
        w = dad_witness(FIB, [1])
        d = check_witness(FIB, w, 16).to_dict()
        assert set(d) >= {"F", "mu", "nu", "beta_mu", "max_chain_V", "cocycle_bound", "pass"}
        assert d["F"] == [1] and d["pass"] is True


class TestChainModelSpotCheck:
    def test_thread_level_concatenation_matches_word_model(self):
        # compose three cocycle-one arrows along the branch orbit and check
        # the accumulated cocycle equals the word-model jump total
        g = compose(compose(orbit_arrow(0), orbit_arrow(1)), orbit_arrow(2))
        assert g.cocycle == 3
        assert g.target.base.denotes_same(OM)
        assert g.source.base.denotes_same(OM.shift(3))

from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ppconj import (
    AffElem,
    CaseTag,
    End,
    Interval,
    PiecewiseProjMap,
    QuadExt,
    centralizing_element,
    classify_centralizer,
    classify_interval,
    make_pmap,
    moebius_bump,
    phi_germ,
    pmap_germ,
    pmap_power,
    straddling_breakpoint,
)
from ppconj.errors import MixedSign, PreconditionViolated
from ppconj.randomgen import ElementClass, RandomSpec, random_conjugator, random_element
from strategies import seeds
from worked_examples import continuum_z, discrete_z, stair_working_g, translation

Q = lambda x: QuadExt(x, 0, 1)  # noqa: E731


def exps(sig):
    return sig.n, sig.m, sig.k


def h_less(seed):
    return random_element(RandomSpec(seed=seed), ElementClass.H_LESS)


def straddle_power(z):
    """The least ``s`` with ``z^s(R) < L``."""
    L = pmap_germ(z, End.NEG_INF)[1]
    R = pmap_germ(z, End.POS_INF)[1]
    s, p = 1, z
    while not p(R) < L:
        s, p = s + 1, z * p
    return s


def straddle_map():
    # 2t up to -1, then t - 1
    return make_pmap([-1], [(2, 0, 0, 1), (1, -1, 0, 1)])


class TestPhiGerm:
    def test_examples(self):
        assert phi_germ(PiecewiseProjMap.identity()) == AffElem.identity()
        assert phi_germ(stair_working_g()) == AffElem(Q(1), Q(-1))
        assert phi_germ(PiecewiseProjMap.affine(3, F(-1, 2))) == AffElem(Q(3), Q(F(-1, 2)))

    @settings(max_examples=20)
    @given(seeds)
    def test_injective_on_centralizer(self, s):
        z = h_less(s % 10**6)
        members = [pmap_power(z, k) for k in range(-3, 4)]
        germs = [phi_germ(g) for g in members]
        assert len(set(germs)) == len(members)


class TestStraddle:
    def test_example(self):
        ev = straddling_breakpoint(straddle_map(), 1)
        assert ev.power == 2 and ev.breakpoint == -2
        assert ev.interval == Interval(Q(-4), Q(-1))
        assert ev.verify()

    def test_hand_composition(self):
        # z^-1 is t/2 then t+1, affine on [-2,-1]; z^-2 bends at -2
        zi = straddle_map().inverse()
        assert zi == make_pmap([-2], [(F(1, 2), 0, 0, 1), (1, 1, 0, 1)])
        assert pmap_power(zi, 2).breakpoints == (Q(-4), Q(-2))

    def test_larger_s(self):
        ev = straddling_breakpoint(straddle_map(), 2)
        assert ev.power in (2, 4) and ev.verify()

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            straddling_breakpoint(translation(-1), 1)
        with pytest.raises(PreconditionViolated):
            straddling_breakpoint(translation(1), 1)
        with pytest.raises(PreconditionViolated):
            straddling_breakpoint(straddle_map(), 0)

    @settings(max_examples=15)
    @given(seeds)
    def test_random(self, s):
        z = h_less(s % 10**6)
        ev = straddling_breakpoint(z, straddle_power(z))
        assert ev.verify()
        lo, hi = ev.interval.lo, ev.interval.hi
        assert lo < hi
        if ev.breakpoint is not None:
            assert lo < ev.breakpoint < hi


class TestClassify:
    def test_identity(self):
        sig = classify_centralizer(PiecewiseProjMap.identity())
        assert exps(sig) == (0, 0, 1) and str(sig) == "H (n=0,m=0,k=1)"

    def test_identity_on_interval(self):
        assert classify_interval(PiecewiseProjMap.identity(), (Q(0), Q(1))).factor == "H"

    def test_continuum(self):
        sig = classify_centralizer(continuum_z())
        assert exps(sig) == (0, 1, 0)
        assert sig.reports[0].tag is CaseTag.MATHER_CONTINUUM

    def test_discrete(self):
        sig = classify_centralizer(discrete_z())
        assert exps(sig) == (1, 0, 0) and str(sig) == "Z (n=1,m=0,k=0)"
        assert sig.reports[0].tag is CaseTag.MATHER_DISCRETE

    def test_translation(self):
        sig = classify_centralizer(translation(3))
        assert exps(sig) == (0, 1, 0)

    def test_scaling(self):
        # 2t fixes only 0; each half line carries a Moebius flow
        sig = classify_centralizer(PiecewiseProjMap.affine(2, 0))
        assert exps(sig) == (0, 2, 0)
        assert all(r.tag is CaseTag.SINGLE_MOEBIUS for r in sig.reports)

    def test_half_fixed(self):
        z = make_pmap([0], [(1, 0, 0, 1), (2, 0, 0, 1)])
        sig = classify_centralizer(z)
        assert exps(sig) == (0, 1, 1) and sig.group_string() == "R x H"

    def test_bump(self):
        sig = classify_centralizer(moebius_bump(Q(0), Q(1), Q(2)))
        assert exps(sig) == (0, 1, 2)

    def test_hyperbolic_germ_with_breakpoints(self):
        z = make_pmap([0, 1], [(1, 0, 0, 1), (2, 0, 0, 1), (1, 1, 0, 1)])
        sig = classify_centralizer(z)
        assert exps(sig) == (1, 0, 1)
        rep = sig.reports[1]
        assert rep.tag is CaseTag.HYPERBOLIC_BREAKPOINTS and rep.caveat
        assert not any(r.caveat for r in sig.reports[:1])

    def test_mixed_sign(self):
        with pytest.raises(MixedSign):
            classify_interval(PiecewiseProjMap.affine(2, 0), (None, None))

    def test_signature_counts(self):
        sig = classify_centralizer(moebius_bump(Q(0), Q(1), Q(2)))
        factors = [r.factor for r in sig.reports]
        assert (factors.count("Z"), factors.count("R"), factors.count("H")) == exps(sig)

    @settings(max_examples=15)
    @given(seeds)
    def test_conjugation_invariance(self, s):
        z = h_less(s % 10**6)
        h = random_conjugator(RandomSpec(seed=s % 10**6 + 1))
        assert exps(classify_centralizer(h.inverse() * z * h)) == exps(classify_centralizer(z))

    @settings(max_examples=10)
    @given(seeds)
    def test_conjugation_invariance_translation_germs(self, s):
        z = random_element(RandomSpec(seed=s % 10**6), ElementClass.TRANSLATION_GERMS)
        h = random_conjugator(RandomSpec(seed=s % 10**6 + 2))
        a, b = classify_centralizer(z), classify_centralizer(h.inverse() * z * h)
        assert exps(a) == exps(b)
        assert [r.tag for r in a.reports] == [r.tag for r in b.reports]


class TestSoundness:
    @pytest.mark.parametrize(
        "z",
        [
            PiecewiseProjMap.identity(),
            continuum_z(),
            discrete_z(),
            translation(F(5, 2)),
            PiecewiseProjMap.affine(2, 0),
            PiecewiseProjMap.affine(F(1, 3), 1),
            moebius_bump(Q(0), Q(1), Q(2)),
            make_pmap([0, 1], [(1, 0, 0, 1), (2, 0, 0, 1), (1, 1, 0, 1)]),
        ],
    )
    def test_explicit_members_commute(self, z):
        for rep in classify_centralizer(z).reports:
            g = centralizing_element(z, rep)
            assert not g.is_identity()
            assert g * z == z * g
            # supported on the report's interval
            iv = rep.interval
            for t in (iv.lo, iv.hi):
                if t is not None:
                    assert g(t) == t

    def test_continuum_member_is_not_a_power(self):
        z = continuum_z()
        g = centralizing_element(z, classify_centralizer(z).reports[0])
        assert g * g == z

    @settings(max_examples=10)
    @given(seeds)
    def test_random_one_bump(self, s):
        z = h_less(s % 10**6)
        for rep in classify_centralizer(z).reports:
            g = centralizing_element(z, rep)
            assert g * z == z * g and not g.is_identity()

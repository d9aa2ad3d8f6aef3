from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ppconj import (
    AffElem,
    BoxPair,
    End,
    Interval,
    PiecewiseProjMap,
    QuadExt,
    compute_boxes,
    identification_extend,
    identification_step,
    make_moebius,
    make_pmap,
    necessary_report,
    pmap_germ,
    pmap_power,
    power_conj_check,
    stair,
)
from ppconj.errors import IterationCapExceeded, PreconditionViolated, SlopeMismatch
from ppconj.randomgen import ElementClass, RandomSpec, random_conjugator, random_element
from strategies import seeds
from worked_examples import (
    stair_failing_y,
    stair_failing_z,
    stair_working_g,
    stair_working_y,
    stair_working_z,
)

Q = lambda x: QuadExt(x, 0, 1)  # noqa: E731


def germ(f):
    return pmap_germ(f, End.NEG_INF)[0]


def conjugate_pair(seed):
    y = random_element(RandomSpec(seed=seed), ElementClass.H_LESS)
    h = random_conjugator(RandomSpec(seed=seed + 7919))
    return y, h, h.inverse() * y * h


class TestNecessary:
    def test_working_pair(self):
        assert necessary_report(stair_working_y(), stair_working_z()).all_pass

    def test_orientation(self):
        r = necessary_report(PiecewiseProjMap.affine(1, -1), PiecewiseProjMap.affine(1, 1))
        assert not r.orientation_compatible and not r.all_pass

    def test_slopes(self):
        y = PiecewiseProjMap.affine(2, -1)
        z = make_pmap([0], [(3, 0, 0, 1), (2, 0, 0, 1)])
        assert not necessary_report(y, z).slopes_equal


class TestBoxes:
    def test_examples(self):
        assert compute_boxes(stair_working_y(), stair_working_z()) == BoxPair(Q(0), Q(2))
        assert compute_boxes(stair_failing_y(), stair_failing_z()) == BoxPair(Q(1), Q(2))

    def test_globally_affine(self):
        y = PiecewiseProjMap.affine(1, -1)
        assert compute_boxes(y, y) == BoxPair(Q(0), Q(0))

    def test_slope_mismatch(self):
        with pytest.raises(SlopeMismatch):
            compute_boxes(PiecewiseProjMap.affine(2, 0), PiecewiseProjMap.affine(3, 0))


class TestIdentification:
    def test_equal_maps(self):
        y = stair_working_z()
        p = identification_step(y, y, Q(0))
        assert all(piece.is_identity() for _, _, piece in p.segments())

    def test_failing_example_first_piece(self):
        p = identification_step(stair_failing_y(), stair_failing_z(), Q(1))
        assert p.domain == Interval(Q(1), Q(2))
        assert p.piece_on(Q(1), Q(2)) == make_moebius(F(-7, 2), 3, F(-3, 2), 1)

    def test_translated_copy(self):
        y = PiecewiseProjMap.affine(1, -1)
        z = make_pmap([0], [(1, -1, 0, 1), (F(1, 2), -1, 0, 1)])
        p = identification_step(y, z, Q(0))
        # forced values y^-1 z = t/2 on [0, 2]
        assert p.piece_on(Q(0), Q(2)) == make_moebius(F(1, 2), 0, 0, 1)

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            identification_step(PiecewiseProjMap.affine(1, 1), PiecewiseProjMap.affine(1, 1), Q(0))

    def test_extension_agrees_with_candidate(self):
        y, z = stair_working_y(), stair_working_z()
        A = AffElem(Q(1), Q(-1))
        out = stair(y, z, A)
        ext = identification_extend(y, z, A, Q(0), out.N)
        assert ext.domain.hi == out.horizon
        assert ext.segments() == out.candidate.segments()


class TestStair:
    def test_working_example(self):
        out = stair(stair_working_y(), stair_working_z(), AffElem(Q(1), Q(-1)))
        assert out.is_conjugator
        assert out.g == stair_working_g()
        g = out.g
        assert g.inverse() * stair_working_y() * g == stair_working_z()

    def test_failing_example(self):
        out = stair(stair_failing_y(), stair_failing_z(), AffElem(Q(1), Q(0)))
        assert out.kind == "NotConjugateWithGerm" and out.reason == "NonAffineInFinalBox"
        assert out.g is None

    def test_failing_example_forced_three(self):
        out = stair(stair_failing_y(), stair_failing_z(), AffElem(Q(1), Q(0)), force_N=3)
        assert out.N == 3 and out.witness == Interval(Q(2), Q(3))
        assert out.candidate.piece_on(Q(1), Q(2)) == make_moebius(F(-7, 2), 3, F(-3, 2), 1)
        assert out.candidate.piece_on(Q(2), Q(3)) == make_moebius(-5, 9, F(-3, 2), F(5, 2))
        assert out.candidate.piece_on(Q(2), Q(3)).c

    def test_identity_conjugator(self):
        y = PiecewiseProjMap.affine(1, -1)
        out = stair(y, y, AffElem(Q(1), Q(0)))
        assert out.is_conjugator and out.g.is_identity()

    def test_bad_germ(self):
        out = stair(stair_working_y(), stair_working_z(), AffElem(Q(2), Q(0)))
        assert out.reason == "GermNotAffConjugating"

    def test_orientation_mismatch(self):
        out = stair(PiecewiseProjMap.affine(1, -1), PiecewiseProjMap.affine(1, 1), AffElem(Q(1), Q(0)))
        assert out.kind == "Degenerate"

    def test_mixed_precondition(self):
        with pytest.raises(PreconditionViolated):
            stair(PiecewiseProjMap.affine(2, 0), PiecewiseProjMap.affine(2, 0), AffElem(Q(1), Q(0)))

    def test_above_pair(self):
        y, z = stair_working_y().inverse(), stair_working_z().inverse()
        out = stair(y, z, AffElem(Q(1), Q(-1)))
        assert out.is_conjugator and out.g == stair_working_g()

    def test_upward_germ(self):
        # germ t + 1 moves L upward; the reversed problem handles it
        y = PiecewiseProjMap.affine(1, -1)
        h = PiecewiseProjMap.affine(1, 1) * make_pmap([0, 1], [(1, 0, 0, 1), (2, 0, 0, 1), (1, 1, 0, 1)])
        z = h.inverse() * y * h
        out = stair(y, z, germ(h))
        assert out.is_conjugator and out.g == h

    def test_iteration_cap(self):
        with pytest.raises(IterationCapExceeded):
            stair(stair_working_y(), stair_working_z(), AffElem(Q(1), Q(-1)), max_N=1)

    @settings(max_examples=40)
    @given(seeds)
    def test_round_trip(self, s):
        y, h, z = conjugate_pair(s % 10**6)
        out = stair(y, z, germ(h))
        assert out.is_conjugator and out.g == h

    @settings(max_examples=15)
    @given(seeds)
    def test_uniqueness_in_N(self, s):
        y, h, z = conjugate_pair(s % 10**6)
        first = stair(y, z, germ(h))
        later = stair(y, z, germ(h), force_N=first.N + 3)
        assert later.g == first.g == h

    @settings(max_examples=15)
    @given(seeds)
    def test_centralizer_identity(self, s):
        # the only centralizing element with trivial initial germ is the identity
        y = random_element(RandomSpec(seed=s % 10**6), ElementClass.H_LESS)
        out = stair(y, y, AffElem.identity())
        assert out.is_conjugator and out.g.is_identity()


class TestPowerConjugacy:
    def test_working_example(self):
        assert power_conj_check(stair_working_y(), stair_working_z(), stair_working_g(), 4)

    def test_trivial(self):
        y = stair_working_z()
        assert power_conj_check(y, y, PiecewiseProjMap.identity(), 3)

    def test_positive_power_required(self):
        with pytest.raises(PreconditionViolated):
            power_conj_check(stair_working_y(), stair_working_z(), stair_working_g(), 0)

    @settings(max_examples=20)
    @given(seeds)
    def test_random_pairs(self, s):
        y, h, z = conjugate_pair(s % 10**6)
        assert power_conj_check(y, z, h, 2)
        other = random_conjugator(RandomSpec(seed=s % 10**6 + 1))
        if other != h:
            direct = other.inverse() * y * other == z
            powered = other.inverse() * pmap_power(y, 2) * other == pmap_power(z, 2)
            assert direct == powered == power_conj_check(y, z, other, 2)

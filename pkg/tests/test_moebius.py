from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ppconj import (
    INFINITY,
    AffElem,
    MoebiusClass,
    MoebiusMap,
    QuadExt,
    make_moebius,
    moebius_apply,
    moebius_as_affine,
    moebius_classify,
    moebius_compose,
    moebius_fixed_points,
    moebius_inverse,
)
from ppconj.errors import FieldEscape, OrientationReversing, SingularMatrix
from ppconj.moebius import ALL_POINTS
from strategies import moebius_maps, quads

Q = lambda x: QuadExt(x, 0, 1)  # noqa: E731


class TestConstruction:
    def test_canonical_form(self):
        f = make_moebius(2, -2, F(-3, 2), 2)
        assert f.coefficients() == (Q(1), Q(-1), Q(F(-3, 4)), Q(1))

    def test_identity(self):
        assert make_moebius(1, 0, 0, 1) == MoebiusMap.identity()
        assert make_moebius(1, 0, 0, 1).is_identity()

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            make_moebius(1, 2, 3, 6)

    def test_orientation_reversing(self):
        with pytest.raises(OrientationReversing):
            make_moebius(0, 1, 1, 0)

    def test_negative_scaling_is_same_map(self):
        assert make_moebius(-2, 2, F(3, 2), -2) == make_moebius(2, -2, F(-3, 2), 2)

    def test_leading_zero_coefficients(self):
        f = make_moebius(0, -3, 3, 1)
        assert f.coefficients()[:2] == (Q(0), Q(1))

    @given(moebius_maps())
    def test_canonical_idempotent(self, f):
        g = make_moebius(*f.coefficients())
        assert g == f and g.coefficients() == f.coefficients()
        first = next(x for x in f.coefficients() if x)
        assert first == 1 and f.det().sign() > 0


class TestApply:
    def test_examples(self):
        assert moebius_apply(make_moebius(1, -2, F(3, 2), -2), Q(0)) == 1
        root2 = QuadExt(0, 1, 2)
        assert moebius_apply(MoebiusMap.identity(2), root2) == root2
        assert moebius_apply(make_moebius(2, -2, F(-3, 2), 2), Q(1)) == 0

    def test_infinity(self):
        f = make_moebius(2, -2, F(-3, 2), 2)
        assert moebius_apply(f, INFINITY) == Q(F(-4, 3))
        assert moebius_apply(MoebiusMap.affine(2, 1), INFINITY) is INFINITY
        assert moebius_apply(f, f.pole()) is INFINITY


class TestGroupLaw:
    def test_examples(self):
        assert moebius_compose(MoebiusMap.affine(1, 1), MoebiusMap.affine(2, 0)) == MoebiusMap.affine(2, 1)
        f = make_moebius(2, -2, F(-3, 2), 2)
        assert moebius_compose(f, moebius_inverse(f)).is_identity()
        assert moebius_compose(f, MoebiusMap.affine(1, 1)) == make_moebius(2, 0, F(-3, 2), F(1, 2))

    def test_inverse_examples(self):
        assert moebius_inverse(make_moebius(1, -2, F(3, 2), -2)) == make_moebius(2, -2, F(3, 2), -1)
        assert moebius_inverse(MoebiusMap.identity()).is_identity()
        assert moebius_inverse(MoebiusMap.affine(1, 5)) == MoebiusMap.affine(1, -5)

    @given(moebius_maps(), moebius_maps(), quads(1))
    def test_apply_respects_composition(self, f, g, t):
        gt = g(t)
        lhs = (f * g)(t)
        rhs = f(gt)
        assert lhs == rhs or (lhs is INFINITY and rhs is INFINITY)

    @given(moebius_maps(2), moebius_maps(2), moebius_maps(2))
    def test_associative(self, f, g, h):
        assert (f * g) * h == f * (g * h)
        assert (f * f.inverse()).is_identity()


class TestClassify:
    def test_examples(self):
        assert moebius_classify(make_moebius(2, -2, F(-3, 2), 2)) is MoebiusClass.HYPERBOLIC
        assert moebius_classify(MoebiusMap.affine(1, 1)) is MoebiusClass.PARABOLIC
        assert moebius_classify(MoebiusMap.identity()) is MoebiusClass.IDENTITY
        assert moebius_classify(make_moebius(0, -1, 1, 0)) is MoebiusClass.ELLIPTIC

    @given(moebius_maps(), moebius_maps())
    def test_conjugation_invariant(self, f, g):
        assert moebius_classify(g * f * g.inverse()) is moebius_classify(f)


class TestFixedPoints:
    def test_quadratic_field(self):
        f = make_moebius(2, -2, F(-3, 2), 2, field_d=3)
        r = QuadExt(0, F(2, 3), 3)
        assert moebius_fixed_points(f) == (-r, r)

    def test_field_escape(self):
        with pytest.raises(FieldEscape):
            moebius_fixed_points(make_moebius(2, -2, F(-3, 2), 2))

    def test_translation(self):
        assert moebius_fixed_points(MoebiusMap.affine(1, 1)) == (INFINITY,)

    def test_identity(self):
        assert moebius_fixed_points(MoebiusMap.identity()) is ALL_POINTS

    def test_affine_scaling(self):
        assert moebius_fixed_points(MoebiusMap.affine(2, -2)) == (Q(2), INFINITY)

    @given(moebius_maps(2))
    def test_fixed_points_are_fixed(self, f):
        assume(not f.is_identity())
        try:
            pts = moebius_fixed_points(f)
        except FieldEscape:
            return
        for x in pts:
            assert f(x) == x or (x is INFINITY and f(x) is INFINITY)

    @given(st.integers(-5, 5), st.integers(-5, 5))
    def test_hyperbolic_fixed_points_in_field(self, a, b):
        # the map with fixed points a and b+sqrt 2 must report exactly those
        p, q = QuadExt(a, 0, 2), QuadExt(b, 1, 2)
        # sends p -> 0 and q -> infinity, orientation chosen to keep det > 0
        phi = make_moebius(1, -p, -1, q) if p < q else make_moebius(1, -p, 1, -q)
        f = phi.inverse() * make_moebius(3, 0, 0, 1, field_d=2) * phi
        assert set(moebius_fixed_points(f)) == {p, q}


class TestAsAffine:
    def test_examples(self):
        assert moebius_as_affine(MoebiusMap.affine(1, -1)) == AffElem(Q(1), Q(-1))
        assert moebius_as_affine(make_moebius(1, -2, F(3, 2), -2)) is None
        assert moebius_as_affine(make_moebius(2, 3, 0, F(1, 2))) == AffElem(Q(4), Q(6))

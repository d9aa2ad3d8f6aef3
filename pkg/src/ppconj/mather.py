"""Mather invariants of one-bump maps whose germs at both ends are translations.

For ``z`` above the diagonal with ``z(t) = t + b0`` near ``-inf`` and
``z(t) = t + b1`` near ``+inf``, a piecewise affine rescaler ``s`` sends the
orbit ``z^k(L)`` to the integers, so ``s z s^-1`` is translation by 1 near both
ends.  A large power of the rescaled map, restricted to ``[-1, 0]``, is the lift
of a degree-one circle map: the Mather invariant.  Two such maps are conjugate
exactly when their invariants differ by rotations of the two circles.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .affgroup import AffElem
from .conjugacy import stair
from .errors import (
    InternalInvariantViolation,
    IterationCapExceeded,
    NotTranslationGerms,
    PreconditionViolated,
)
from .exactnum import QuadExt
from .moebius import MoebiusMap
from .pmap import (
    BumpClass,
    End,
    PiecewiseProjMap,
    _merge,
    pmap_germ,
    pmap_one_bump_class,
    pmap_power,
    restrict_segments,
)

__all__ = [
    "CircleMapLift",
    "MatherInvariant",
    "RotationMatch",
    "TranslationClassVerdict",
    "translation_germs",
    "build_rescaler",
    "mather_invariant",
    "rotations_matching",
    "decide_conjugacy_translation_class",
]


def _shift(k, d: int) -> MoebiusMap:
    return MoebiusMap.affine(QuadExt(1, 0, d), k if isinstance(k, QuadExt) else QuadExt(k, 0, d))


@dataclass(frozen=True)
class CircleMapLift:
    """A degree-one lift ``F`` given on the fundamental domain ``[-1, 0]``.

    ``breakpoints`` lie in the open interval ``(-1, 0)`` and ``pieces`` cover
    ``[-1, 0]``; elsewhere ``F(t + 1) = F(t) + 1``.
    """

    breakpoints: tuple
    pieces: tuple

    @property
    def field_d(self) -> int:
        return self.pieces[0].field_d

    def __call__(self, t: QuadExt) -> QuadExt:
        k = t.floor() + 1
        u = t - k
        return self.pieces[bisect_right(self.breakpoints, u)](u) + k

    def degree(self) -> QuadExt:
        d = self.field_d
        return self.pieces[-1](QuadExt(0, 0, d)) - self.pieces[0](QuadExt(-1, 0, d))

    def wraps_smoothly(self) -> bool:
        """Whether the pieces on either side of ``0 ~ -1`` are the same Moebius map."""
        d = self.field_d
        return self.pieces[-1] == _shift(1, d) * self.pieces[0] * _shift(-1, d)

    def circle_breakpoints(self) -> list[QuadExt]:
        """Breakpoints of the induced circle map, as representatives in ``[-1, 0)``."""
        d = self.field_d
        out = [] if self.wraps_smoothly() else [QuadExt(-1, 0, d)]
        return out + list(self.breakpoints)

    def normalized(self) -> CircleMapLift:
        """Shift values by an integer so that ``F(-1)`` lies in ``[-1, 0)``."""
        d = self.field_d
        k = -1 - self.pieces[0](QuadExt(-1, 0, d)).floor()
        if not k:
            return self
        t = _shift(k, d)
        return CircleMapLift(self.breakpoints, tuple(t * p for p in self.pieces))

    def is_translation(self) -> bool:
        return not self.breakpoints and self.wraps_smoothly()

    def __str__(self) -> str:
        los = (-1,) + tuple(self.breakpoints)
        his = tuple(self.breakpoints) + (0,)
        return "\n".join(f"{p}  on  [{lo}, {hi}]" for lo, hi, p in zip(los, his, self.pieces))


@dataclass(frozen=True)
class MatherInvariant:
    N: int
    lift: CircleMapLift
    rescaler: PiecewiseProjMap
    rescaled: PiecewiseProjMap
    L: QuadExt

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatherInvariant):
            return NotImplemented
        return self.lift.normalized() == other.lift.normalized()

    __hash__ = None


def translation_germs(z: PiecewiseProjMap) -> tuple[QuadExt, QuadExt]:
    """The intercepts ``(b0, b1)`` of the translation germs, or :class:`NotTranslationGerms`."""
    g0, _ = pmap_germ(z, End.NEG_INF)
    g1, _ = pmap_germ(z, End.POS_INF)
    if g0.slope != 1 or g1.slope != 1:
        raise NotTranslationGerms(f"germ slopes are {g0.slope} and {g1.slope}, not 1")
    return g0.intercept, g1.intercept


def _above(z: PiecewiseProjMap) -> None:
    cls = pmap_one_bump_class(z)
    if cls is not BumpClass.ABOVE:
        raise PreconditionViolated(f"map must lie above the diagonal, got {cls.value}")


def build_rescaler(y: PiecewiseProjMap, L: QuadExt, N: int) -> PiecewiseProjMap:
    """The piecewise affine ``s`` with ``s(y^k(L)) = k`` for every integer ``k``."""
    b0, b1 = translation_germs(y)
    d = y.field_d
    if not isinstance(L, QuadExt):
        L = QuadExt(L, 0, d)
    if N < 1:
        raise PreconditionViolated("N must be positive")
    if y.breakpoints and L > y.breakpoints[0]:
        raise PreconditionViolated(f"y is not a translation on (-inf, {L}]")
    if b0.sign() <= 0 or b1.sign() <= 0:
        raise PreconditionViolated("translation germs must move points to the right")
    orbit = [L]
    for _ in range(N - 1):
        orbit.append(y(orbit[-1]))
    if y.breakpoints and orbit[-1] < y.breakpoints[-1]:
        raise PreconditionViolated(f"y^{N - 1}(L) = {orbit[-1]} lies before the last breakpoint")
    one = QuadExt(1, 0, d)
    pieces = [MoebiusMap.affine(one / b0, -L / b0)]
    for j in range(N - 1):
        w = orbit[j + 1] - orbit[j]
        pieces.append(MoebiusMap.affine(one / w, -orbit[j] / w + j))
    pieces.append(MoebiusMap.affine(one / b1, -orbit[-1] / b1 + (N - 1)))
    return _merge(tuple(orbit), tuple(pieces))


def _default_box(z: PiecewiseProjMap) -> tuple[QuadExt, QuadExt]:
    d = z.field_d
    if not z.breakpoints:
        zero = QuadExt(0, 0, d)
        return zero, zero
    return z.breakpoints[0], z.breakpoints[-1]


def _minimal_N(z: PiecewiseProjMap, L: QuadExt, R: QuadExt, max_N: int) -> int:
    t, n = L, 1
    while t < R:
        t = z(t)
        n += 1
        if n > max_N:
            raise IterationCapExceeded(f"orbit of L does not reach R = {R} within {max_N} steps")
    return n


def mather_invariant(z: PiecewiseProjMap, N: int | None = None, max_N: int = 10_000) -> MatherInvariant:
    """The Mather invariant of ``z`` above the diagonal with translation germs.

    ``N`` defaults to the least admissible value; any admissible ``N`` gives the
    same lift up to an integer shift of values.
    """
    translation_germs(z)
    _above(z)
    L, R = _default_box(z)
    n_min = _minimal_N(z, L, R, max_N)
    if N is None:
        N = n_min
    elif N < n_min:
        raise PreconditionViolated(f"N = {N} is below the least admissible value {n_min}")
    s = build_rescaler(z, L, N)
    zbar = s * z * s.inverse()
    d = z.field_d
    segs = restrict_segments(pmap_power(zbar, N), QuadExt(-1, 0, d), QuadExt(0, 0, d))
    lift = CircleMapLift(tuple(x[1] for x in segs[:-1]), tuple(x[2] for x in segs))
    if lift.degree() != 1:
        raise InternalInvariantViolation(f"lift has degree {lift.degree()}, expected 1")
    return MatherInvariant(N=N, lift=lift, rescaler=s, rescaled=zbar, L=L)


@dataclass(frozen=True)
class RotationMatch:
    """Rotation pairs ``(l, m)`` with ``Z(t) + m = Y(t + l)``.

    With ``all_rotations`` every ``l`` works and ``m = l + offset``; otherwise
    ``pairs`` lists the finitely many solutions with ``l`` in ``[0, 1)`` and
    ``m`` reduced to ``[0, 1)``.
    """

    all_rotations: bool
    pairs: tuple = ()
    offset: QuadExt | None = None

    def __bool__(self) -> bool:
        return self.all_rotations or bool(self.pairs)

    def ells(self) -> list[QuadExt]:
        if self.all_rotations:
            return [QuadExt(0, 0, self.offset.d)]
        return [p[0] for p in self.pairs]


def _frac(x: QuadExt) -> QuadExt:
    return x - x.floor()


def _rotated_segments(lift: CircleMapLift, ell: QuadExt) -> list:
    """Segments over ``[-1, 0]`` of ``t -> F(t + ell)`` for ``ell`` in ``[0, 1)``."""
    d = lift.field_d
    tl = _shift(ell, d)
    segs = []
    cut = -ell
    los = (QuadExt(-1, 0, d),) + lift.breakpoints
    his = lift.breakpoints + (QuadExt(0, 0, d),)
    # t in [-1, -ell]: t + ell in [-1 + ell, 0]
    for lo, hi, p in zip(los, his, lift.pieces):
        a, b = lo - ell, hi - ell
        a = max(a, QuadExt(-1, 0, d))
        if a < b and b <= cut:
            segs.append((a, b, p * tl))
    # t in [-ell, 0]: F(t + ell) = F(t + ell - 1) + 1
    t2 = _shift(ell - 1, d)
    up = _shift(1, d)
    for lo, hi, p in zip(los, his, lift.pieces):
        a, b = lo - ell + 1, hi - ell + 1
        b = min(b, QuadExt(0, 0, d))
        if a < b and a >= cut:
            segs.append((a, b, up * p * t2))
    return segs


def _same_function(sa: list, sb: list) -> bool:
    ma = _merge(tuple(s[1] for s in sa[:-1]), tuple(s[2] for s in sa))
    mb = _merge(tuple(s[1] for s in sb[:-1]), tuple(s[2] for s in sb))
    return ma == mb


def rotations_matching(inv_y: MatherInvariant | CircleMapLift,
                       inv_z: MatherInvariant | CircleMapLift) -> RotationMatch:
    """All rotation pairs relating two Mather invariants."""
    Y = inv_y.lift if isinstance(inv_y, MatherInvariant) else inv_y
    Z = inv_z.lift if isinstance(inv_z, MatherInvariant) else inv_z
    d = Y.field_d
    minus_one = QuadExt(-1, 0, d)
    if Y.is_translation() and Z.is_translation():
        cy = Y.pieces[0](minus_one) + 1
        cz = Z.pieces[0](minus_one) + 1
        return RotationMatch(True, (), cy - cz)
    by, bz = Y.circle_breakpoints(), Z.circle_breakpoints()
    if len(by) != len(bz):
        return RotationMatch(False, ())
    bz_set = {_frac(b) for b in bz}
    pairs = []
    for b in by:
        ell = _frac(b - bz[0])
        if {_frac(x - ell) for x in by} != bz_set:
            continue
        rot = _rotated_segments(Y, ell)
        lo, hi, p = rot[0]
        t = (lo + hi) / 2
        zi = bisect_right(Z.breakpoints, t)
        m = p(t) - Z.pieces[zi](t)
        zlos = (minus_one,) + Z.breakpoints
        zhis = Z.breakpoints + (QuadExt(0, 0, d),)
        shifted = [(a, c, _shift(m, d) * q) for a, c, q in zip(zlos, zhis, Z.pieces)]
        if _same_function(rot, shifted):
            pairs.append((ell, _frac(m)))
    pairs.sort(key=lambda pr: pr[0])
    return RotationMatch(False, tuple(pairs))


@dataclass
class TranslationClassVerdict:
    conjugate: bool
    g: PiecewiseProjMap | None = None
    reason: str | None = None
    matches: RotationMatch | None = None
    notes: list = field(default_factory=list)


def decide_conjugacy_translation_class(y: PiecewiseProjMap, z: PiecewiseProjMap) -> TranslationClassVerdict:
    """Decide conjugacy of one-bump maps with translation germs and build a conjugator.

    Each map is rescaled by its own rescaler, which already normalizes both
    germs to translation by 1; a conjugator of the rescaled maps with initial
    germ ``t + l`` comes from the stair construction and is transported back.
    """
    translation_germs(y)
    translation_germs(z)
    cy, cz = pmap_one_bump_class(y), pmap_one_bump_class(z)
    for c in (cy, cz):
        if c not in (BumpClass.ABOVE, BumpClass.BELOW):
            raise PreconditionViolated(f"maps must be one-bump on the whole line, got {c.value}")
    if cy != cz:
        return TranslationClassVerdict(False, reason=f"orientation mismatch ({cy.value} vs {cz.value})")
    notes = []
    yy, zz = y, z
    if cy is BumpClass.BELOW:
        yy, zz = y.inverse(), z.inverse()
        notes.append("both maps below the diagonal: worked with the inverses")
    iy, iz = mather_invariant(yy), mather_invariant(zz)
    matches = rotations_matching(iy, iz)
    if not matches:
        return TranslationClassVerdict(False, reason="Mather invariants do not differ by rotations",
                                       matches=matches, notes=notes)
    ybar, zbar = iy.rescaled, iz.rescaled
    for ell in matches.ells():
        out = stair(ybar.inverse(), zbar.inverse(), AffElem(QuadExt(1, 0, ell.d), ell))
        if out.is_conjugator:
            g = iy.rescaler.inverse() * out.g * iz.rescaler
            if g * z != y * g:
                raise InternalInvariantViolation("transported conjugator fails verification")
            return TranslationClassVerdict(True, g=g, matches=matches, notes=notes)
        raise InternalInvariantViolation(
            f"rotation l = {ell} matches the invariants but the stair construction gave {out.reason}"
        )
    raise InternalInvariantViolation("no rotation candidates")

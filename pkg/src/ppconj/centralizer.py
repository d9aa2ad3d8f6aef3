"""Centralizers in H: interval decomposition and the Z^n x R^m x H^k signature.

The boundary of the fixed-point set of ``z`` is preserved by every element of
its centralizer, so the centralizer splits as a product over the components of
the complement of that boundary.  Each component is classified separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .affgroup import AffElem
from .conjugacy import stair
from .errors import (
    InternalInvariantViolation,
    MixedSign,
    PreconditionViolated,
)
from .exactnum import QuadExt
from .mather import mather_invariant, rotations_matching, translation_germs
from .moebius import MoebiusMap, make_moebius
from .pmap import (
    BumpClass,
    End,
    Interval,
    PiecewiseProjMap,
    _from_segments,
    pmap_fix_boundary,
    pmap_germ,
    pmap_interpolate,
    pmap_one_bump_class,
    pmap_power,
    pmap_transport,
    pmap_untransport,
    restrict_segments,
)

__all__ = [
    "CaseTag",
    "IntervalReport",
    "CentralizerSignature",
    "StraddleEvidence",
    "phi_germ",
    "straddling_breakpoint",
    "classify_interval",
    "classify_centralizer",
    "centralizing_element",
]


class CaseTag(str, Enum):
    FIXED_IDENTITY = "FixedIdentity"
    SINGLE_MOEBIUS = "SingleMoebiusRestriction"
    GLOBAL_TRANSLATION = "GlobalTranslation"
    MATHER_DISCRETE = "TranslationGermsMatherDiscrete"
    MATHER_CONTINUUM = "TranslationGermsMatherContinuum"
    HYPERBOLIC_BREAKPOINTS = "HyperbolicGermWithBreakpoints"


FACTOR = {
    CaseTag.FIXED_IDENTITY: "H",
    CaseTag.SINGLE_MOEBIUS: "R",
    CaseTag.GLOBAL_TRANSLATION: "R",
    CaseTag.MATHER_DISCRETE: "Z",
    CaseTag.MATHER_CONTINUUM: "R",
    CaseTag.HYPERBOLIC_BREAKPOINTS: "Z",
}


@dataclass(frozen=True)
class IntervalReport:
    interval: Interval
    tag: CaseTag
    detail: str = ""

    @property
    def factor(self) -> str:
        return FACTOR[self.tag]

    @property
    def caveat(self) -> bool:
        """Set when the verdict rests on a discreteness result without an independent certificate."""
        return self.tag is CaseTag.HYPERBOLIC_BREAKPOINTS

    def __str__(self) -> str:
        s = f"{self.interval}: {self.tag.value} -> {self.factor}"
        if self.caveat:
            s += " (caveat)"
        if self.detail:
            s += f"  [{self.detail}]"
        return s


@dataclass(frozen=True)
class CentralizerSignature:
    n: int
    m: int
    k: int
    reports: tuple = field(default_factory=tuple)

    def group_string(self) -> str:
        parts = []
        for sym, e in (("Z", self.n), ("R", self.m), ("H", self.k)):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        return " x ".join(parts) or "1"

    def __str__(self) -> str:
        return f"{self.group_string()} (n={self.n},m={self.m},k={self.k})"


def phi_germ(g: PiecewiseProjMap) -> AffElem:
    """The initial germ of ``g`` as an element of Aff(R)."""
    return pmap_germ(g, End.NEG_INF)[0]


@dataclass(frozen=True)
class StraddleEvidence:
    """``z^-power`` is not a single affine map on ``interval``."""

    power: int
    breakpoint: QuadExt | None
    interval: Interval
    pieces: tuple

    def verify(self) -> bool:
        """Re-check by piece inspection that the evidence is not affine."""
        return len(self.pieces) > 1 or bool(self.pieces[0].c)


def _non_affine_on(f: PiecewiseProjMap, lo: QuadExt, hi: QuadExt):
    segs = restrict_segments(f, lo, hi)
    if len(segs) > 1:
        return segs[0][1], tuple(s[2] for s in segs)
    if segs[0][2].c:
        return None, (segs[0][2],)
    return False


def straddling_breakpoint(z: PiecewiseProjMap, s: int) -> StraddleEvidence:
    """A breakpoint of ``z^-s`` on ``[z^s(R), L]`` or of ``z^-2s`` on ``[z^2s(R), L]``.

    ``z`` must lie below the diagonal with different germ slopes at the two
    ends, and ``z^s(R) < L`` for its affinity thresholds ``L`` and ``R``.
    """
    if pmap_one_bump_class(z) is not BumpClass.BELOW:
        raise PreconditionViolated("z must lie below the diagonal")
    g0, L = pmap_germ(z, End.NEG_INF)
    g1, R = pmap_germ(z, End.POS_INF)
    if g0.slope == g1.slope:
        raise PreconditionViolated("germ slopes at the two ends must differ")
    if s <= 0:
        raise PreconditionViolated("s must be positive")
    zs = pmap_power(z, s)
    if not zs(R) < L:
        raise PreconditionViolated(f"z^{s}(R) = {zs(R)} is not below L = {L}")
    for power in (s, 2 * s):
        lo = pmap_power(z, power)(R)
        found = _non_affine_on(pmap_power(z, -power), lo, L)
        if found is not False:
            bp, pieces = found
            return StraddleEvidence(power, bp, Interval(lo, L), pieces)
    raise InternalInvariantViolation(f"neither z^-{s} nor z^-{2 * s} has a breakpoint in the final window")


def _interior_breakpoints(z: PiecewiseProjMap, iv: Interval) -> list:
    return [b for b in z.breakpoints if iv.contains(b)]


def classify_interval(z: PiecewiseProjMap, interval: Interval | tuple) -> IntervalReport:
    """Classify the centralizer of ``z`` in the subgroup supported on ``interval``."""
    iv = Interval(*interval)
    cls = pmap_one_bump_class(z, iv)
    if cls is BumpClass.IDENTITY:
        return IntervalReport(iv, CaseTag.FIXED_IDENTITY)
    if cls is BumpClass.MIXED:
        raise MixedSign(f"z has fixed points inside {iv} or crosses the diagonal there")
    if not _interior_breakpoints(z, iv):
        piece = z.piece_at(_inside(iv, z.field_d))
        return IntervalReport(iv, CaseTag.SINGLE_MOEBIUS, f"z = {piece} on the interval")
    w = pmap_transport(z, iv)
    if cls is BumpClass.BELOW:
        w = w.inverse()
    g0, _ = pmap_germ(w, End.NEG_INF)
    g1, _ = pmap_germ(w, End.POS_INF)
    if g0.slope == 1 and g1.slope == 1:
        if w.is_affine():
            return IntervalReport(iv, CaseTag.GLOBAL_TRANSLATION)
        inv = mather_invariant(w)
        match = rotations_matching(inv, inv)
        if match.all_rotations:
            return IntervalReport(iv, CaseTag.MATHER_CONTINUUM, "breakpoint-free Mather invariant")
        return IntervalReport(iv, CaseTag.MATHER_DISCRETE,
                              f"{len(match.pairs)} self-rotation(s) of the Mather invariant")
    return IntervalReport(iv, CaseTag.HYPERBOLIC_BREAKPOINTS,
                          f"transported germ slopes {g0.slope}, {g1.slope}")


def _inside(iv: Interval, d: int) -> QuadExt:
    if iv.lo is None and iv.hi is None:
        return QuadExt(0, 0, d)
    if iv.lo is None:
        return iv.hi - 1
    if iv.hi is None:
        return iv.lo + 1
    return (iv.lo + iv.hi) / 2


def _components(points: list, d: int) -> list[Interval]:
    ends = [None] + list(points) + [None]
    return [Interval(a, b) for a, b in zip(ends, ends[1:])]


def classify_centralizer(z: PiecewiseProjMap) -> CentralizerSignature:
    """The exponents of ``C_H(z) = Z^n x R^m x H^k`` with one report per component."""
    points, _ = pmap_fix_boundary(z)
    reports = tuple(classify_interval(z, iv) for iv in _components(points, z.field_d))
    counts = {"Z": 0, "R": 0, "H": 0}
    for r in reports:
        counts[r.factor] += 1
    return CentralizerSignature(counts["Z"], counts["R"], counts["H"], reports)


# ---------------------------------------------------------------------------
# explicit centralizing elements (soundness certificates)


def _support_bump(iv: Interval, d: int) -> PiecewiseProjMap:
    """A nontrivial element of H supported inside ``iv``."""
    c = _inside(iv, d)
    if iv.lo is None and iv.hi is None:
        a, b = c - 1, c + 1
    elif iv.lo is None:
        a, b = iv.hi - 2, iv.hi - QuadExt(1, 0, d) / 2
    elif iv.hi is None:
        a, b = iv.lo + QuadExt(1, 0, d) / 2, iv.lo + 2
    else:
        w = iv.hi - iv.lo
        a, b = iv.lo + w / 4, iv.hi - w / 4
    mid = (a + b) / 2
    return pmap_interpolate([a, mid, b], [a, mid + (b - mid) / 2, b], d)


def _extend_by_identity(piece: MoebiusMap, iv: Interval) -> PiecewiseProjMap:
    d = piece.field_d
    ident = MoebiusMap.identity(d)
    segs = []
    if iv.lo is not None:
        segs.append((None, iv.lo, ident))
    segs.append((iv.lo, iv.hi, piece))
    if iv.hi is not None:
        segs.append((iv.hi, None, ident))
    return _from_segments(segs)


def _moebius_flow_member(piece: MoebiusMap, iv: Interval) -> MoebiusMap:
    """A member of the one-parameter family through ``piece`` other than its powers, when possible."""
    d = piece.field_d
    one, two = QuadExt(1, 0, d), QuadExt(2, 0, d)
    if iv.lo is not None and iv.hi is not None:
        p, q = iv.lo, iv.hi
        phi = make_moebius(one, -p, -one, q)  # p -> 0, q -> infinity
        return phi.inverse() * MoebiusMap.affine(two, 0 * one) * phi
    if iv.lo is not None:
        return MoebiusMap.affine(two, -iv.lo)
    if iv.hi is not None:
        return MoebiusMap.affine(two, -iv.hi)
    # translation on the whole line
    return MoebiusMap.affine(one, piece.b / piece.d / 2)


def _mather_member(w: PiecewiseProjMap, ell: QuadExt) -> PiecewiseProjMap | None:
    inv = mather_invariant(w)
    wbar = inv.rescaled
    out = stair(wbar.inverse(), wbar.inverse(), AffElem(QuadExt(1, 0, ell.d), ell))
    if not out.is_conjugator:
        return None
    return inv.rescaler.inverse() * out.g * inv.rescaler


def centralizing_element(z: PiecewiseProjMap, report: IntervalReport) -> PiecewiseProjMap:
    """An explicit nontrivial element commuting with ``z``, supported on the report's interval."""
    iv = report.interval
    d = z.field_d
    tag = report.tag
    if tag is CaseTag.FIXED_IDENTITY:
        return _support_bump(iv, d)
    if tag is CaseTag.SINGLE_MOEBIUS:
        piece = z.piece_at(_inside(iv, d))
        return _extend_by_identity(_moebius_flow_member(piece, iv), iv)
    w = pmap_transport(z, iv)
    below = pmap_one_bump_class(z, iv) is BumpClass.BELOW
    if below:
        w = w.inverse()
    if tag is CaseTag.GLOBAL_TRANSLATION:
        b = translation_germs(w)[0]
        member = PiecewiseProjMap.affine(1, b / 2, d)
    elif tag is CaseTag.MATHER_CONTINUUM:
        member = _mather_member(w, QuadExt(1, 0, d) / 2)
        if member is None:
            raise InternalInvariantViolation("continuum case produced no conjugator for l = 1/2")
    else:
        member = w
    return pmap_untransport(member, iv)

"""Conjugacy of one-bump maps: necessary conditions, affinity boxes and the Stair Algorithm.

Conventions: ``y`` and ``z`` are conjugate by ``g`` when ``g^-1 y g = z``, that
is ``g o z = y o g``.  The stair construction works with maps below the
diagonal; pairs above the diagonal are handled by inverting both maps, which
does not change the set of conjugators.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .affgroup import AffElem, aff_are_conjugate, aff_inv, aff_mul
from .errors import (
    InternalInvariantViolation,
    IterationCapExceeded,
    PreconditionViolated,
    SlopeMismatch,
)
from .exactnum import QuadExt
from .moebius import MoebiusMap
from .pmap import (
    BumpClass,
    End,
    Interval,
    PiecewiseProjMap,
    _compose_segments,
    _merge,
    pmap_germ,
    pmap_one_bump_class,
    pmap_power,
    restrict_segments,
)

__all__ = [
    "NecessaryReport",
    "BoxPair",
    "PartialMap",
    "StairOutcome",
    "necessary_report",
    "compute_boxes",
    "identification_step",
    "identification_extend",
    "stair",
    "power_conj_check",
]


@dataclass(frozen=True)
class NecessaryReport:
    slopes_equal: bool
    germ_classes_equal_neg: bool
    germ_classes_equal_pos: bool
    orientation_compatible: bool

    @property
    def all_pass(self) -> bool:
        return (self.slopes_equal and self.germ_classes_equal_neg
                and self.germ_classes_equal_pos and self.orientation_compatible)


@dataclass(frozen=True)
class BoxPair:
    """Both maps are affine on ``(-inf, L]`` and on ``[R, +inf)``."""

    L: QuadExt
    R: QuadExt


@dataclass(frozen=True)
class PartialMap:
    """A piecewise Moebius map known only on ``domain``."""

    domain: Interval
    breakpoints: tuple
    pieces: tuple

    def __call__(self, t):
        if not self.domain.contains(t, closed=True):
            raise ValueError(f"{t} outside {self.domain}")
        return self.pieces[bisect_right(self.breakpoints, t)](t)

    def segments(self) -> list:
        los = (self.domain.lo,) + self.breakpoints
        his = self.breakpoints + (self.domain.hi,)
        return list(zip(los, his, self.pieces))

    def piece_on(self, lo: QuadExt, hi: QuadExt) -> MoebiusMap | None:
        """The single piece covering ``[lo, hi]``, or ``None`` when a breakpoint splits it."""
        i = bisect_right(self.breakpoints, lo)
        if i < len(self.breakpoints) and self.breakpoints[i] < hi:
            return None
        return self.pieces[i]

    def __str__(self) -> str:
        out = []
        for lo, hi, p in self.segments():
            a = "(-inf" if lo is None else f"[{lo}"
            b = "+inf)" if hi is None else f"{hi}]"
            out.append(f"{p}  on  {a}, {b}")
        return "\n".join(out)


def _partial(segs: list, domain: Interval) -> PartialMap:
    m = _merge(tuple(s[1] for s in segs[:-1]), tuple(s[2] for s in segs))
    return PartialMap(domain, m.breakpoints, m.pieces)


@dataclass
class StairOutcome:
    """Result of a stair run.

    ``kind`` is ``"Conjugator"``, ``"NotConjugateWithGerm"`` or ``"Degenerate"``.
    The construction data (``N``, the candidate on ``(-inf, horizon]``) is kept
    for inspection.
    """

    kind: str
    g: PiecewiseProjMap | None = None
    reason: str | None = None
    witness: Interval | None = None
    N: int | None = None
    candidate: PartialMap | None = None
    horizon: QuadExt | None = None
    notes: list = field(default_factory=list)

    @property
    def is_conjugator(self) -> bool:
        return self.kind == "Conjugator"


# ---------------------------------------------------------------------------


def _orientation(f: PiecewiseProjMap) -> BumpClass:
    return pmap_one_bump_class(f)


def necessary_report(y: PiecewiseProjMap, z: PiecewiseProjMap) -> NecessaryReport:
    """Cheap invariants that conjugate maps must share."""
    yn, _ = pmap_germ(y, End.NEG_INF)
    zn, _ = pmap_germ(z, End.NEG_INF)
    yp, _ = pmap_germ(y, End.POS_INF)
    zp, _ = pmap_germ(z, End.POS_INF)
    oy, oz = _orientation(y), _orientation(z)
    return NecessaryReport(
        slopes_equal=yn.slope == zn.slope and yp.slope == zp.slope,
        germ_classes_equal_neg=aff_are_conjugate(yn, zn)[0],
        germ_classes_equal_pos=aff_are_conjugate(yp, zp)[0],
        orientation_compatible=oy == oz,
    )


def _thresholds(y: PiecewiseProjMap, z: PiecewiseProjMap) -> BoxPair:
    d = y.field_d
    lows = [b[0] for b in (y.breakpoints, z.breakpoints) if b]
    highs = [b[-1] for b in (y.breakpoints, z.breakpoints) if b]
    zero = QuadExt(0, 0, d)
    return BoxPair(min(lows) if lows else zero, max(highs) if highs else zero)


def compute_boxes(y: PiecewiseProjMap, z: PiecewiseProjMap) -> BoxPair:
    """Initial and final thresholds ``L`` and ``R``.

    When both maps are globally affine any value works; we use 0.
    """
    for end in End:
        gy, _ = pmap_germ(y, end)
        gz, _ = pmap_germ(z, end)
        if gy.slope != gz.slope:
            raise SlopeMismatch(f"germ slopes at {end.value} differ: {gy.slope} vs {gz.slope}")
    return _thresholds(y, z)


def _agree_on(y: PiecewiseProjMap, z: PiecewiseProjMap, hi: QuadExt) -> bool:
    a = _merge(*_unzip(restrict_segments(y, None, hi)))
    b = _merge(*_unzip(restrict_segments(z, None, hi)))
    return a == b


def _unzip(segs):
    return tuple(s[1] for s in segs[:-1]), tuple(s[2] for s in segs)


def identification_step(y: PiecewiseProjMap, z: PiecewiseProjMap, L: QuadExt) -> PartialMap:
    """The values ``y^-1 z`` forced on ``[L, z^-1(L)]`` for a conjugator fixing ``(-inf, L]``."""
    if _orientation(y) is not BumpClass.BELOW or _orientation(z) is not BumpClass.BELOW:
        raise PreconditionViolated("identification needs both maps below the diagonal")
    if not _agree_on(y, z, L):
        raise PreconditionViolated(f"y and z differ on (-inf, {L}]")
    zinv = z.inverse()
    hi = zinv(L)
    segs = restrict_segments(z, L, hi)
    yinv = y.inverse()
    out = _compose_segments(yinv.breakpoints, yinv.pieces, segs)
    return _partial(out, Interval(L, hi))


def identification_extend(y: PiecewiseProjMap, z: PiecewiseProjMap, germ: AffElem,
                          L: QuadExt, steps: int) -> PartialMap:
    """Repeat the identification step: extend ``g = germ`` on ``(-inf, L]`` by ``g = y^-1 g z``."""
    g0 = MoebiusMap.affine(germ.slope, germ.intercept)
    bps: tuple = ()
    pieces: tuple = (g0,)
    hi = L
    yinv = y.inverse()
    zinv = z.inverse()
    for _ in range(steps):
        nxt = zinv(hi)
        zs = restrict_segments(z, hi, nxt)
        inner = _compose_segments(bps, pieces, zs)
        new = _compose_segments(yinv.breakpoints, yinv.pieces, inner)
        segs = list(zip((None,) + bps, bps + (hi,), pieces)) + new
        merged = _merge(*_unzip(segs))
        bps, pieces, hi = merged.breakpoints, merged.pieces, nxt
    return PartialMap(Interval(None, hi), bps, pieces)


def _normalize_pair(y, z):
    oy, oz = _orientation(y), _orientation(z)
    if oy is BumpClass.BELOW and oz is BumpClass.BELOW:
        return y, z, None
    if oy is BumpClass.ABOVE and oz is BumpClass.ABOVE:
        return y.inverse(), z.inverse(), "both maps above the diagonal: ran on the inverses"
    if {oy, oz} == {BumpClass.ABOVE, BumpClass.BELOW}:
        return None, None, f"orientation mismatch ({oy.value} vs {oz.value}): not conjugate"
    raise PreconditionViolated(
        f"stair needs one-bump maps on the whole line, got {oy.value} and {oz.value}"
    )


def stair(y: PiecewiseProjMap, z: PiecewiseProjMap, germ: AffElem, max_N: int = 256,
          force_N: int | None = None) -> StairOutcome:
    """Build the unique candidate conjugator with initial germ ``germ`` and test it.

    Returns a :class:`StairOutcome`; a ``Conjugator`` outcome carries ``g`` with
    ``g^-1 y g = z`` verified exactly.
    """
    y0, z0 = y, z
    y, z, note = _normalize_pair(y, z)
    if y is None:
        return StairOutcome("Degenerate", reason=note)
    notes = [note] if note else []
    yn, _ = pmap_germ(y, End.NEG_INF)
    zn, _ = pmap_germ(z, End.NEG_INF)
    if aff_mul(aff_inv(germ), aff_mul(yn, germ)) != zn:
        return StairOutcome("NotConjugateWithGerm", reason="GermNotAffConjugating", notes=notes)
    box = _thresholds(y, z)
    if germ(box.L) > box.L:
        # run the reversed problem: g^-1 conjugates z to y with germ A^-1
        out = _stair_below(z, y, aff_inv(germ), box, max_N, force_N)
        out.notes = notes + ["germ moves L upward: solved for the inverse conjugator"] + out.notes
        if out.g is not None:
            out.g = out.g.inverse()
    else:
        out = _stair_below(y, z, germ, box, max_N, force_N)
        out.notes = notes + out.notes
    if out.g is not None and out.g * z0 != y0 * out.g:
        raise InternalInvariantViolation("verified conjugator failed on the original pair")
    return out


def _pick_N(y, z, A, box, max_N, force_N) -> int:
    yinv, zinv = y.inverse(), z.inverse()
    tz, ty = box.L, A(box.L)
    n = 0
    while True:
        n += 1
        if n > max_N:
            raise IterationCapExceeded(f"no N <= {max_N} pushes the initial box past R = {box.R}")
        tz, ty = zinv(tz), yinv(ty)
        ok = tz > box.R and ty > box.R
        if force_N is not None:
            if n == force_N:
                if not ok:
                    raise PreconditionViolated(f"N = {force_N} does not push the initial box past R")
                return n
        elif ok:
            return n


def _stair_below(y, z, A: AffElem, box: BoxPair, max_N: int, force_N: int | None) -> StairOutcome:
    N = _pick_N(y, z, A, box, max_N, force_N)
    g0 = PiecewiseProjMap.affine(A.slope, A.intercept)
    cand = pmap_power(y, -N) * g0 * pmap_power(z, N)
    horizon = pmap_power(z, -N)(box.L)
    candidate = _partial(restrict_segments(cand, None, horizon), Interval(None, horizon))
    # the candidate must be affine inside the final box [R, +inf)^2
    start = max(box.R, cand.inverse()(box.R))
    window = restrict_segments(cand, start, horizon)
    base = dict(N=N, candidate=candidate, horizon=horizon)
    for lo, hi, piece in window:
        if piece.c:
            return StairOutcome("NotConjugateWithGerm", reason="NonAffineInFinalBox",
                                witness=Interval(lo, hi), **base)
    if len(window) > 1:
        lo, hi, _ = window[0]
        return StairOutcome("NotConjugateWithGerm", reason="NonAffineInFinalBox",
                            witness=Interval(lo, window[1][1]), **base)
    k = bisect_right(cand.breakpoints, start)
    g = _merge(cand.breakpoints[:k], cand.pieces[: k + 1])
    if g * z != y * g:
        return StairOutcome("NotConjugateWithGerm", g=None, reason="VerificationFailed", **base)
    return StairOutcome("Conjugator", g=g, **base)


def power_conj_check(y: PiecewiseProjMap, z: PiecewiseProjMap, g: PiecewiseProjMap, n: int) -> bool:
    """Whether ``g^-1 y g = z``; cross-checked against the ``n``-th powers for one-bump pairs."""
    if n <= 0:
        raise PreconditionViolated("power must be positive")
    ginv = g.inverse()
    direct = ginv * y * g == z
    powered = ginv * pmap_power(y, n) * g == pmap_power(z, n)
    oy, oz = _orientation(y), _orientation(z)
    if oy == oz and oy in (BumpClass.ABOVE, BumpClass.BELOW) and direct != powered:
        raise InternalInvariantViolation(
            f"conjugacy of y, z ({direct}) disagrees with conjugacy of their {n}-th powers ({powered})"
        )
    return direct

"""Exact conjugacy and centralizer computations in Monod's group H of
piecewise projective homeomorphisms of the line."""

from __future__ import annotations

__version__ = "0.1.0"

from .affgroup import AffCentralizer, AffElem, aff_are_conjugate, aff_centralizer, aff_inv, aff_mul
from .centralizer import (
    CaseTag,
    CentralizerSignature,
    IntervalReport,
    StraddleEvidence,
    centralizing_element,
    classify_centralizer,
    classify_interval,
    phi_germ,
    straddling_breakpoint,
)
from .conjugacy import (
    BoxPair,
    NecessaryReport,
    PartialMap,
    StairOutcome,
    compute_boxes,
    identification_extend,
    identification_step,
    necessary_report,
    power_conj_check,
    stair,
)
from .errors import *  # noqa: F401,F403
from .exactnum import QQ, FieldSpec, QuadExt, field_arith, field_sign, field_to_decimal
from .mapfile import MapDocument, dumps_document, load_document, load_map_ref, loads_document, save_document
from .mather import (
    CircleMapLift,
    MatherInvariant,
    RotationMatch,
    TranslationClassVerdict,
    build_rescaler,
    decide_conjugacy_translation_class,
    mather_invariant,
    rotations_matching,
    translation_germs,
)
from .moebius import (
    INFINITY,
    MoebiusClass,
    MoebiusMap,
    make_moebius,
    moebius_apply,
    moebius_as_affine,
    moebius_classify,
    moebius_compose,
    moebius_fixed_points,
    moebius_inverse,
)
from .oracle import numeric_oracle
from .pmap import (
    BumpClass,
    End,
    Interval,
    PiecewiseProjMap,
    make_pmap,
    pmap_apply,
    pmap_compose,
    pmap_fix_boundary,
    pmap_germ,
    pmap_interpolate,
    pmap_inverse,
    pmap_one_bump_class,
    pmap_power,
    pmap_transport,
    pmap_untransport,
)
from .randomgen import ElementClass, RandomSpec, moebius_bump, random_conjugator, random_element

"""Exact-arithmetic models of embedded algebroid surfaces: Weierstrass
normalization, the smooth equimultiple locus, quadratic and monoidal
blow-ups, and how the locus evolves through a resolution process."""

from .blowup import (StrictTransformInverse, curve_monoidal_transform,
                     curve_quadratic_transform, induced_chart_map,
                     invert_strict_transform, monoidal_transform,
                     quadratic_transform, rename)
from .coordinates import ChartError, Direction, VariableChange
from .curves import (CurveIdeal, EquimultipleCheck, LocusReport,
                     check_equimultiple, enumerate_smooth_equimultiple,
                     is_equimultiple, is_permitted_axis, normalize_curve)
from .driver import (LemmaReport, ResolutionNode, TheoremReport,
                     classify_transform, equimultiple_directions,
                     levi_zariski_resolve, tree_steps, tree_to_dot,
                     tree_to_text, verify_lemma)
from .parser import ParseError, parse_expression
from .series import (DEFAULT_PRECISION, NotDivisible, OrderBound,
                     PrecisionViolation, SeriesError, TruncatedSeries,
                     generators)
from .surface import (SurfaceError, WeierstrassSurface, from_equation,
                      multiplicity, newton_set, tangent_cone_is_plane)
from .weierstrass import (WeierstrassDivisionResult, weierstrass_divide,
                          weierstrass_prepare)

__version__ = "0.1.0"

__all__ = [
    "ChartError", "CurveIdeal", "DEFAULT_PRECISION", "Direction",
    "EquimultipleCheck", "LemmaReport", "LocusReport", "NotDivisible",
    "OrderBound", "ParseError", "PrecisionViolation", "ResolutionNode",
    "SeriesError", "StrictTransformInverse", "SurfaceError", "TheoremReport",
    "TruncatedSeries", "VariableChange", "WeierstrassDivisionResult",
    "WeierstrassSurface", "check_equimultiple", "classify_transform",
    "curve_monoidal_transform", "curve_quadratic_transform",
    "enumerate_smooth_equimultiple", "equimultiple_directions",
    "from_equation", "generators", "induced_chart_map", "invert_strict_transform",
    "is_equimultiple", "is_permitted_axis", "levi_zariski_resolve",
    "monoidal_transform", "multiplicity", "newton_set", "normalize_curve",
    "parse_expression", "quadratic_transform", "rename", "tangent_cone_is_plane",
    "tree_steps", "tree_to_dot", "tree_to_text", "verify_lemma",
    "weierstrass_divide", "weierstrass_prepare",
]

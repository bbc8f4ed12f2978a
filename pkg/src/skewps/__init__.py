"""Exact arithmetic in skew power series rings R[[z; tau, delta]] and their
Laurent localisations, iterated towers, and a rewriting oracle."""

from skewps.config import check_precision, max_precision, set_max_precision
from skewps.expr import evaluate_text, parse_expr, to_text
from skewps.laurent import SkewLaurentSeries
from skewps.report import Report
from skewps.rings import NotUnit, ring_from_id
from skewps.series import SkewSeries, invert, is_unit, mul, to_left_form, to_right_form
from skewps.tower import TowerSpec, build_tower

__version__ = "0.1.0"

__all__ = [
    "check_precision", "max_precision", "set_max_precision",
    "evaluate_text", "parse_expr", "to_text",
    "SkewLaurentSeries", "SkewSeries", "Report", "NotUnit", "ring_from_id",
    "invert", "is_unit", "mul", "to_left_form", "to_right_form",
    "TowerSpec", "build_tower",
]

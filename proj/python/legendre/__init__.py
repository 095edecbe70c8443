"""Legendre curves in smooth strictly convex normed planes."""

import json

from ._core import (
    Expression,
    LegendreCurve,
    LegendreError,
    Plane,
    catalog,
    curvature_pair,
    euclidean,
    evolute,
    fourier,
    from_expression,
    involute,
    lp,
    maslov_index,
    parallel,
    parse_expression,
    pedal,
    run_config,
    synthesize,
)
from ._core import singularity_report_json as _core_report


def singularity_report(curve):
    """Cusps, inflections, vertices and Maslov data as a dict."""
    return json.loads(_core_report(curve))

__all__ = [
    "Expression",
    "LegendreCurve",
    "LegendreError",
    "Plane",
    "catalog",
    "curvature_pair",
    "euclidean",
    "evolute",
    "fourier",
    "from_expression",
    "involute",
    "lp",
    "maslov_index",
    "parallel",
    "parse_expression",
    "pedal",
    "run_config",
    "singularity_report",
    "synthesize",
]

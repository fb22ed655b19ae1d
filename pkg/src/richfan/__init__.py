"""Exact richness tests, blowup monomial ideals and fan subdivisions for
tropical curves with edge lengths in a sharp monoid."""

from .cones import Cone, Fan, hilbert_basis, is_unimodular
from .curves import (
    BasicModel,
    PLFunction,
    RealFamily,
    TropicalCurve,
    family_is_weakly_r_rich,
)
from .graphs import Graph
from .monoids import INF, SharpMonoid, divisors
from .subdivision import (
    ChoiceFunction,
    CutOrder,
    MonomialIdeal,
    SmoothnessReport,
    all_choice_functions,
    choice_cone,
    choice_function_fan,
    choice_monoid,
    cut_order_from_choice,
    factors_through,
    ideal_product,
    ideal_product_many,
    newton_subdivision,
    pullback_to_contraction,
    richness_ideal,
    smoothness_report,
    weakly_rich_fan,
)

__version__ = "0.1.0"

__all__ = [
    "BasicModel",
    "ChoiceFunction",
    "Cone",
    "CutOrder",
    "Fan",
    "Graph",
    "INF",
    "MonomialIdeal",
    "PLFunction",
    "RealFamily",
    "SharpMonoid",
    "SmoothnessReport",
    "TropicalCurve",
    "all_choice_functions",
    "choice_cone",
    "choice_function_fan",
    "choice_monoid",
    "cut_order_from_choice",
    "divisors",
    "factors_through",
    "family_is_weakly_r_rich",
    "hilbert_basis",
    "ideal_product",
    "ideal_product_many",
    "is_unimodular",
    "newton_subdivision",
    "pullback_to_contraction",
    "richness_ideal",
    "smoothness_report",
    "weakly_rich_fan",
]

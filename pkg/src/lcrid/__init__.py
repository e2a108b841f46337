"""Identifiability analysis for series-parallel LCR circuit networks."""

from .constitutive import (
    CoefficientMap,
    ConstEq,
    Param,
    build_consteq,
    coefficient_map,
    nonmonic_count,
)
from .identify import (
    GHProblem,
    IdentVerdict,
    build_gh,
    count_criterion,
    is_alternating_good,
    is_locally_identifiable,
)
from .network import (
    ElementKind,
    Leaf,
    Network,
    Parallel,
    Series,
    dual_network,
    enumerate_networks,
    format_network,
    parse_network,
    random_network,
)
from .polyalg import P, DiffOp, MultiPoly, Shape, alternation_class, shape_of
from .relations import RelationPoly, find_relations, monomial_stratum, scaling_invariance_check, verify_relation_exact
from .typesys import LCClass, TypeQuad, combine_parallel, combine_series, lc_class, lc_table_lookup, type_closure, type_of

__version__ = "0.1.0"

__all__ = [
    "CoefficientMap",
    "ConstEq",
    "DiffOp",
    "ElementKind",
    "GHProblem",
    "IdentVerdict",
    "LCClass",
    "Leaf",
    "MultiPoly",
    "Network",
    "P",
    "Parallel",
    "Param",
    "RelationPoly",
    "Series",
    "Shape",
    "TypeQuad",
    "alternation_class",
    "build_consteq",
    "build_gh",
    "coefficient_map",
    "combine_parallel",
    "combine_series",
    "count_criterion",
    "dual_network",
    "enumerate_networks",
    "find_relations",
    "format_network",
    "is_alternating_good",
    "is_locally_identifiable",
    "lc_class",
    "lc_table_lookup",
    "monomial_stratum",
    "nonmonic_count",
    "parse_network",
    "random_network",
    "scaling_invariance_check",
    "shape_of",
    "type_closure",
    "type_of",
    "verify_relation_exact",
]

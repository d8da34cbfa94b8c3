"""Exact complexity of billiards in convex polygons.

Counts the billiard words of a convex polygon by exact unfolding, counts its
generalized diagonals, checks the identities tying the two together, and
evaluates the cubic growth constants of the lattice polygons.
"""
from .diagonals import (
    DiagonalTable,
    GeneralizedDiagonal,
    enumerate_diagonals,
    gd,
    index_of,
    verify_geometric_lemma,
    verify_theorem1,
)
from .kernel import IMPL as KERNEL
from .language import (
    LanguageTable,
    ResourceLimitError,
    bispecial_words,
    corridor,
    enumerate_language,
    extend,
    extension_counts,
    sample_words,
    verify_difference_identity,
    word_feasible,
)
from .lattice import (
    RegionSpec,
    coprime_count,
    equilateral_Nc_closed,
    estimate_limit,
    isosceles_link_length,
    isosceles_m0,
    isosceles_region_count,
    mobius_sieve,
    square_Nc_closed,
    theorem2_constant,
)
from .polygon import Polygon, PolygonError, catalog, random_convex_polygon, read_polygon
from .qfield import AffineIsometry, Point2, QuadScalar, orient, parse_scalar, scalar_sign

__all__ = [
    "AffineIsometry",
    "DiagonalTable",
    "GeneralizedDiagonal",
    "KERNEL",
    "LanguageTable",
    "Point2",
    "Polygon",
    "PolygonError",
    "QuadScalar",
    "RegionSpec",
    "ResourceLimitError",
    "bispecial_words",
    "catalog",
    "coprime_count",
    "corridor",
    "enumerate_diagonals",
    "enumerate_language",
    "equilateral_Nc_closed",
    "estimate_limit",
    "extend",
    "extension_counts",
    "gd",
    "index_of",
    "isosceles_link_length",
    "isosceles_m0",
    "isosceles_region_count",
    "mobius_sieve",
    "orient",
    "parse_scalar",
    "random_convex_polygon",
    "read_polygon",
    "sample_words",
    "scalar_sign",
    "square_Nc_closed",
    "theorem2_constant",
    "verify_difference_identity",
    "verify_geometric_lemma",
    "verify_theorem1",
    "word_feasible",
]

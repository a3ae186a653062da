"""Exact analysis of conic-line arrangements in the complex projective plane.

Rational arithmetic end to end: incidence combinatorics, linear systems
through prescribed points, connected numbers of double covers, candidate
Zariski-pair certificates, and realization-space minimality reports.
"""

from .arrangement import Arrangement, Component, ParseError, SubCurve, parse, serialize
from .incidence import (
    Combinatorics,
    ConjugatePair,
    SingularPoint,
    Tangent,
    TwoRational,
    combinatorics,
    component_fingerprint,
    equivalences,
    intersect_line_conic,
    intersect_lines,
    singular_points,
    tangency,
)
from .linalg import QMatrix, QVectorBasis, in_span, intersect_subspaces, kernel_basis, rank
from .moduli import (
    MinimalityReport,
    OrderingCertificate,
    connectivity_certificate,
    minimality_check,
    n_value,
)
from .poly import (
    HomPoly,
    ProjPoint,
    evaluate,
    monomial_row,
    monomials,
    multiplication_image,
    multiply,
)
from .splitting import (
    LinearSystem,
    SplitHypothesisError,
    SplitHypothesisReport,
    ZariskiCertificate,
    check_hypotheses,
    connected_number,
    connected_number_with_witness,
    through_points,
    zariski_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "Combinatorics",
    "Component",
    "ConjugatePair",
    "HomPoly",
    "LinearSystem",
    "MinimalityReport",
    "OrderingCertificate",
    "ParseError",
    "ProjPoint",
    "QMatrix",
    "QVectorBasis",
    "SingularPoint",
    "SplitHypothesisError",
    "SplitHypothesisReport",
    "SubCurve",
    "Tangent",
    "TwoRational",
    "ZariskiCertificate",
    "check_hypotheses",
    "combinatorics",
    "component_fingerprint",
    "connected_number",
    "connected_number_with_witness",
    "connectivity_certificate",
    "equivalences",
    "evaluate",
    "in_span",
    "intersect_line_conic",
    "intersect_lines",
    "intersect_subspaces",
    "kernel_basis",
    "minimality_check",
    "monomial_row",
    "monomials",
    "multiplication_image",
    "multiply",
    "n_value",
    "parse",
    "rank",
    "serialize",
    "singular_points",
    "tangency",
    "through_points",
    "zariski_certificate",
]

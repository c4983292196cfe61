"""Syzygies, Hilbert coefficients and Eisenbud operators over graded complete intersections."""

from .arith import GF, ModuleElement, PolyRing, Polynomial, UsageError, monomial_cmp
from .cring import (
    CIRing,
    NotRegularSequence,
    Presentation,
    make_ring,
    mcm_check,
    minimalize,
    polynomial_ring,
    present,
)
from .groebner import GroebnerBasis, buchberger, normal_form, syzygies
from .hilbert import (
    HilbertData,
    e_coefficient,
    hilbert_samuel,
    hilbert_series,
    oracle_dim,
    samuel_data,
)
from .resolve import Resolution, next_syzygy, q_resolution, regularity, resolve
from .eisenbud import lift_resolution, operator_map, operators, scan_operator
from .asymptotics import QuasiPolyFit, TheoremReport, complexity_estimate, fit_quasi_polynomial
from .analysis import analyze
from .files import ExampleSpec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "GF",
    "CIRing",
    "ExampleSpec",
    "GroebnerBasis",
    "HilbertData",
    "ModuleElement",
    "NotRegularSequence",
    "PolyRing",
    "Polynomial",
    "Presentation",
    "QuasiPolyFit",
    "Resolution",
    "TheoremReport",
    "UsageError",
    "analyze",
    "buchberger",
    "complexity_estimate",
    "e_coefficient",
    "fit_quasi_polynomial",
    "hilbert_samuel",
    "hilbert_series",
    "lift_resolution",
    "make_ring",
    "mcm_check",
    "minimalize",
    "monomial_cmp",
    "next_syzygy",
    "normal_form",
    "operator_map",
    "operators",
    "oracle_dim",
    "parse_spec",
    "polynomial_ring",
    "present",
    "q_resolution",
    "regularity",
    "resolve",
    "samuel_data",
    "scan_operator",
    "syzygies",
]

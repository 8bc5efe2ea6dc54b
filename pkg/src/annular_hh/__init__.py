"""Hochschild homology of Khovanov-Seidel braid bimodules and sutured annular Khovanov homology over F_2."""

from .algebra import AmAlgebra, Bimodule, PathElement, build_am, multiply, projective_bimodule, tensor_over_am
from .annular import EnhancedState, FilteredComplex, annular_complex, skh, skh_all, state_gradings
from .braids import BraidWord, ClosureCensus, TLDiagram, closure_census, compose_tl, mirror, parse_braid, resolve
from .f2 import F2Matrix, GradedComplex, GradedDims, homology_dims, rank, verify_complex
from .hochschild import bar_hh_truncated, coinvariant_quotient, cyclic_swap_check, hh_via_coinvariants
from .ks import CubeComplex, elementary_cone, flatten, ks_complex, ks_complex_for
from .verify import Convention, TheoremReport, calibrate, theorem_check

__all__ = [
    "AmAlgebra",
    "Bimodule",
    "BraidWord",
    "ClosureCensus",
    "Convention",
    "CubeComplex",
    "EnhancedState",
    "F2Matrix",
    "FilteredComplex",
    "GradedComplex",
    "GradedDims",
    "PathElement",
    "TLDiagram",
    "TheoremReport",
    "annular_complex",
    "bar_hh_truncated",
    "build_am",
    "calibrate",
    "closure_census",
    "coinvariant_quotient",
    "compose_tl",
    "cyclic_swap_check",
    "elementary_cone",
    "flatten",
    "hh_via_coinvariants",
    "homology_dims",
    "ks_complex",
    "ks_complex_for",
    "mirror",
    "multiply",
    "parse_braid",
    "projective_bimodule",
    "rank",
    "resolve",
    "skh",
    "skh_all",
    "state_gradings",
    "tensor_over_am",
    "theorem_check",
    "verify_complex",
]

"""Exact edge/triangle decompositions of graphs.

Integral optimum via triangle packing, the fractional relaxation via an exact
rational simplex, explicit extremal constructions, and an exact re-check of a
7-vertex flag-algebra certificate.
"""

from .constructions import (
    covering_complete,
    decompose_complete,
    decompose_matching_removed,
    ell,
    extremal_family_alpha,
    steiner_triple_system,
    wfun,
)
from .decomp import (
    BudgetExhausted,
    Cover,
    Decomposition,
    brute_force_extremal,
    max_triangle_packing,
    nu_density,
    pi3,
    pi3_alpha,
    triangle_decompose_exact,
    validate_cover,
    validate_decomposition,
)
from .flagcert import coefficient_c, lambda2, matrix_M, psd_check, q_coefficient, verify_certificate
from .fraclp import LinearProgram, lp_solve_min, pi3f
from .graph import (
    CanonicalForm,
    Graph,
    GraphError,
    canonical_form,
    enumerate_unlabeled,
    is_isomorphic,
    make_named,
    parse_graph6,
    to_graph6,
)

__version__ = "0.1.0"

__all__ = [
    "brute_force_extremal",
    "BudgetExhausted",
    "canonical_form",
    "CanonicalForm",
    "coefficient_c",
    "Cover",
    "covering_complete",
    "decompose_complete",
    "decompose_matching_removed",
    "Decomposition",
    "ell",
    "enumerate_unlabeled",
    "extremal_family_alpha",
    "Graph",
    "GraphError",
    "is_isomorphic",
    "lambda2",
    "LinearProgram",
    "lp_solve_min",
    "make_named",
    "matrix_M",
    "max_triangle_packing",
    "nu_density",
    "parse_graph6",
    "pi3",
    "pi3_alpha",
    "pi3f",
    "psd_check",
    "q_coefficient",
    "steiner_triple_system",
    "to_graph6",
    "triangle_decompose_exact",
    "validate_cover",
    "validate_decomposition",
    "verify_certificate",
    "wfun",
]

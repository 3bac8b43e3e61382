"""Exact certificates for a family of braid closures: HOMFLY and
zeroth-coefficient polynomials by two independent engines, sharpness degree
bounds, Ito's braid-positivity obstruction, the Lisca-Stipsicz L-space
criterion with determinant and surgery arithmetic, Dehornoy-order floor
certificates, and Bestvina-Handel graph-map certificates with
Perron-Frobenius dilatations.
"""

__version__ = "0.1.0"

from .braid import (
    BraidWord,
    ClosureStats,
    FAMILY_NAMES,
    beta_braid,
    braid_text,
    cable_braid,
    closure_stats,
    compose,
    conjugate,
    family,
    half_twist,
    inverse,
    kn_braid,
    kn_plus_braid,
    parse_braid,
    power,
    x_braid,
)
from .dehornoy import (
    FloorCertificate,
    SigmaClass,
    dehornoy_less,
    floor_exceeds_one,
    handle_reduce,
    sigma_classify,
)
from .errors import BraidError, BudgetExceededError
from .homfly import (
    PolynomialCache,
    alexander,
    canonical_key,
    coefficient_polys,
    determinant,
    homfly,
    p0,
)
from .montesinos import (
    LspaceVerdict,
    SeifertData,
    det_montesinos,
    ell_family,
    is_lspace_m1,
    normalize,
    surgery_slopes,
)
from .poly import LaurentPoly1, LaurentPoly2, specialize
from .positivity import (
    ItoVerdict,
    SharpnessReport,
    genus_kn,
    ito_obstruction,
    nonsharpness_suite,
    sharpness,
    skein_decomposition_check,
    verify_topterm,
)
from .traintrack import (
    EmbeddedGraph,
    GraphMap,
    TransitionMatrix,
    is_efficient_up_to,
    is_irreducible,
    kn_map,
    map_from_json,
    map_to_json,
    pf_eigenvalue,
    transition,
    validate,
)

__all__ = [
    "__version__",
    "BraidWord",
    "ClosureStats",
    "FAMILY_NAMES",
    "beta_braid",
    "braid_text",
    "cable_braid",
    "closure_stats",
    "compose",
    "conjugate",
    "family",
    "half_twist",
    "inverse",
    "kn_braid",
    "kn_plus_braid",
    "parse_braid",
    "power",
    "x_braid",
    "FloorCertificate",
    "SigmaClass",
    "dehornoy_less",
    "floor_exceeds_one",
    "handle_reduce",
    "sigma_classify",
    "BraidError",
    "BudgetExceededError",
    "PolynomialCache",
    "alexander",
    "canonical_key",
    "coefficient_polys",
    "determinant",
    "homfly",
    "p0",
    "LspaceVerdict",
    "SeifertData",
    "det_montesinos",
    "ell_family",
    "is_lspace_m1",
    "normalize",
    "surgery_slopes",
    "LaurentPoly1",
    "LaurentPoly2",
    "specialize",
    "ItoVerdict",
    "SharpnessReport",
    "genus_kn",
    "ito_obstruction",
    "nonsharpness_suite",
    "sharpness",
    "skein_decomposition_check",
    "verify_topterm",
    "EmbeddedGraph",
    "GraphMap",
    "TransitionMatrix",
    "is_efficient_up_to",
    "is_irreducible",
    "kn_map",
    "map_from_json",
    "map_to_json",
    "pf_eigenvalue",
    "transition",
    "validate",
]

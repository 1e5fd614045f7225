"""Exact sphere and paraboloid characterizations of multiplicative support expansions."""

from .affine_root import (
    AffineAxiomReport,
    AffineSupportSpec,
    AffineVerdict,
    AffineView,
    ExplicitAffineSupport,
    GeneratedAffineSupport,
    affine_reflect_point,
    affine_reflect_vec,
    affine_weyl_rhs,
    characterize_affine,
    check_affine_axioms,
    decompose,
    enumerate_support,
    imaginary_roots,
)
from .catalog import (
    CatalogEntry,
    mobius,
    remark29_exponents,
    remark210_counterexample,
    series_inversion_oracle,
    standard_finite,
    untwisted_affine,
)
from .exact import AffineVector, Q, affine, rational, vector
from .finite_root import (
    AxiomReport,
    FiniteVerdict,
    GroupTooLargeError,
    PositiveSystem,
    RootSystem,
    VerdictMismatchError,
    base,
    characterize_finite,
    check_axioms,
    classify,
    denominator_rhs,
    enumerate_weyl,
    positive_roots,
    reflect,
    weyl_vector,
)
from .group_ring import (
    GroupRingElement,
    NotDivisibleError,
    SignedSupportMap,
    SupportMap,
    exact_divide,
    expand_product,
    shift_equivalent,
    truncated_product,
)
from .quadric import ParaboloidFit, SphereFit, fit_paraboloid, fit_sphere

__all__ = [
    "AffineAxiomReport",
    "AffineSupportSpec",
    "AffineVector",
    "AffineVerdict",
    "AffineView",
    "AxiomReport",
    "CatalogEntry",
    "ExplicitAffineSupport",
    "FiniteVerdict",
    "GeneratedAffineSupport",
    "GroupRingElement",
    "GroupTooLargeError",
    "NotDivisibleError",
    "ParaboloidFit",
    "PositiveSystem",
    "Q",
    "RootSystem",
    "SignedSupportMap",
    "SphereFit",
    "SupportMap",
    "VerdictMismatchError",
    "affine",
    "affine_reflect_point",
    "affine_reflect_vec",
    "affine_weyl_rhs",
    "base",
    "characterize_affine",
    "characterize_finite",
    "check_affine_axioms",
    "check_axioms",
    "classify",
    "decompose",
    "denominator_rhs",
    "enumerate_support",
    "enumerate_weyl",
    "exact_divide",
    "expand_product",
    "fit_paraboloid",
    "fit_sphere",
    "imaginary_roots",
    "mobius",
    "positive_roots",
    "rational",
    "reflect",
    "remark29_exponents",
    "remark210_counterexample",
    "series_inversion_oracle",
    "shift_equivalent",
    "standard_finite",
    "truncated_product",
    "untwisted_affine",
    "vector",
    "weyl_vector",
]

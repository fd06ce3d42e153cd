"""Constant-mean-curvature rotation surfaces in E3 and Lorentz-Minkowski E13.

Profile curves and meshes for the three rotation families, exact reduction
of their radicand cubics to short Weierstrass form, a real-branch P-function
evaluator, and the derivative-chain engine that certifies the non-collapse
of d^k r/dx3^k.
"""

from .elliptic_reduction import (DiscPoly, ReductionData, discriminant_poly,
                                 exact_discriminant_poly, is_singular_value,
                                 positive_root_count, reduce,
                                 reduction_report, shifted_cubic_identity,
                                 singular_B)
from .errors import (AccuracyError, BranchError, CmcError, DomainError,
                     EmptyDomainError, InsufficientDataError, NearPoleError,
                     PoleError, RangeError, SingularError, UnsupportedCaseError,
                     UsageError)
from .profiles import (CmcParams, CurveSample, Family, SInterval, SurfaceMesh,
                       anchor, domain, hyperboloid_vertices, implicit_residual,
                       maximal_profile, mean_curvature, mesh, profile_point,
                       surface_point)
from .split_algebra import (ProfileOdeSample, SplitComplex, closed_form_Y,
                            ode_residual, samples_from_closed_form,
                            samples_from_profile, split_exp, split_mul)
from .weierstrass import WpEvaluator
from .wp_chain import (ChainConfig, ChainTerm, PRational, chain_config,
                       curve_from_wp, differentiate_chain, eval_chain_term,
                       polynomiality_probe)

__all__ = [
    "AccuracyError", "BranchError", "ChainConfig", "ChainTerm", "CmcError",
    "CmcParams", "CurveSample", "DiscPoly", "DomainError", "EmptyDomainError",
    "Family", "InsufficientDataError", "NearPoleError", "PRational",
    "PoleError", "ProfileOdeSample", "RangeError", "ReductionData",
    "SInterval", "SingularError", "SplitComplex", "SurfaceMesh",
    "UnsupportedCaseError", "UsageError", "WpEvaluator", "anchor",
    "chain_config", "closed_form_Y", "curve_from_wp", "differentiate_chain",
    "discriminant_poly", "domain", "eval_chain_term",
    "exact_discriminant_poly", "hyperboloid_vertices", "implicit_residual",
    "is_singular_value", "maximal_profile", "mean_curvature", "mesh",
    "ode_residual", "polynomiality_probe", "positive_root_count",
    "profile_point", "reduce", "reduction_report", "samples_from_closed_form",
    "samples_from_profile", "shifted_cubic_identity", "singular_B",
    "split_exp", "split_mul", "surface_point",
]

__version__ = "0.1.0"

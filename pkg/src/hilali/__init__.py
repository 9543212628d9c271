"""Exact Poincaré-polynomial calculus for rational spaces and maps."""

from .calculus import (
    hilali_check,
    injectivity_probe,
    ker_poincare,
    ker_poincare_pi,
    p_of_map,
    p_pi_of_map,
    product_threshold,
    relative_hilali_check,
    verify_exact_identities,
)
from .graded import GradedDims, GradedLinearMap, RationalMatrix
from .maps import MapModel, kernel_profile, power_map, product_map
from .series import PolynomialQ, TruncatedSeriesQ, radius_estimate
from .spaces import SpaceModel, classify

__all__ = [
    "GradedDims", "GradedLinearMap", "MapModel", "PolynomialQ", "RationalMatrix", "SpaceModel",
    "TruncatedSeriesQ", "classify", "hilali_check", "injectivity_probe", "ker_poincare", "ker_poincare_pi",
    "kernel_profile", "p_of_map", "p_pi_of_map", "power_map", "product_map", "product_threshold",
    "radius_estimate", "relative_hilali_check", "verify_exact_identities",
]

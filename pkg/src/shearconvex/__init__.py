"""Harmonic shears on the unit disk with numerical convexity verdicts."""

from .functions import (AnalyticFunction, BlaschkeOmega, CatalogId,
                        MonomialOmega, SchwarzFunction, ZeroOmega, catalog,
                        make_schwarz, rotate_analytic)
from .quadrature import (QuadratureConfig, ToleranceNotMet, antiderivative,
                         antiderivative_many, integrate_segment)
from .shear import (HarmonicMap, ShearSystem, analytic_combination,
                    harmonic_from_analytic, normalize, rotate_harmonic,
                    shear_construct)
from .geometry import (BoundaryCurve, ConvexityReport, DirectionalReport,
                       convexity_check, convexity_check_resolved,
                       directional_convexity_check, parabola_residual,
                       sample_boundary, winding_number)
from .boundary_rotation import (RotationValue, boundary_rotation_value,
                                brannan_transform, vk_membership)
from .probe import (FailureWitness, ProbeConfig, ProbeReport, RegionId,
                    css_characterization_check, halfplane_strip_identifier,
                    midpoint_certificate, probe_admissibility,
                    rotated_counterexample_suite)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction", "BlaschkeOmega", "BoundaryCurve", "CatalogId",
    "ConvexityReport", "DirectionalReport", "FailureWitness", "HarmonicMap",
    "MonomialOmega", "ProbeConfig", "ProbeReport", "QuadratureConfig",
    "RegionId", "RotationValue", "SchwarzFunction", "ShearSystem",
    "ToleranceNotMet", "ZeroOmega", "analytic_combination", "antiderivative",
    "antiderivative_many", "boundary_rotation_value", "brannan_transform",
    "catalog", "convexity_check", "convexity_check_resolved",
    "css_characterization_check", "directional_convexity_check",
    "halfplane_strip_identifier", "harmonic_from_analytic",
    "integrate_segment", "make_schwarz", "midpoint_certificate", "normalize",
    "parabola_residual", "probe_admissibility", "rotate_analytic",
    "rotate_harmonic", "rotated_counterexample_suite", "sample_boundary",
    "shear_construct", "vk_membership", "winding_number",
]

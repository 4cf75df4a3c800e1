"""Outage and coverage analysis of a two-user doubly dirty MAC under
correlated Rayleigh fading, with the correlation described by a copula."""
from .coverage import (
    CoverageResult,
    GridSpec,
    QuadratureFailure,
    coverage_region,
    sum_rate,
    sum_rate_fgm_approx,
    sum_rate_fgm_exact,
    sum_rate_quadrature,
)
from .dependence import DependenceModel, Family, NoDensity, copula_cdf, sample_pairs, survival_copula
from .fading import AvgSnrPair, Geometry
from .montecarlo import McEstimate, estimate_outage, estimate_sum_rate
from .outage import OutageQuery, outage_probability
from .specfun import ei_neg, ei_neg_approx

__version__ = "0.1.0"

__all__ = [
    "AvgSnrPair",
    "CoverageResult",
    "DependenceModel",
    "Family",
    "Geometry",
    "GridSpec",
    "McEstimate",
    "NoDensity",
    "OutageQuery",
    "QuadratureFailure",
    "copula_cdf",
    "coverage_region",
    "ei_neg",
    "ei_neg_approx",
    "estimate_outage",
    "estimate_sum_rate",
    "outage_probability",
    "sample_pairs",
    "sum_rate",
    "sum_rate_fgm_approx",
    "sum_rate_fgm_exact",
    "sum_rate_quadrature",
    "survival_copula",
]

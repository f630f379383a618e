"""Exact Bott-Chern forms, Segre forms and secondary classes on projective bundles."""

from .scalars import GaussianRational
from .grassmann import GeneratorUniverse, GrassmannElement, UPoly, conjugate, bidegree_filter, u_transgress
from .curvature import CurvatureData, CurvatureMatrix, random_curvature
from .report import CheckResult
from .transgression import phi, bott_chern_form, tilde_c_oracle
from .pushforward import S_direct, S_formula, segre_direct
from .series import ClassSeries, SplitBundleSpec, analytic_height, third_schur_coefficient, universal_R, universal_S
from .suites import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "GeneratorUniverse",
    "GrassmannElement",
    "UPoly",
    "conjugate",
    "bidegree_filter",
    "u_transgress",
    "CurvatureData",
    "CurvatureMatrix",
    "random_curvature",
    "CheckResult",
    "phi",
    "bott_chern_form",
    "tilde_c_oracle",
    "segre_direct",
    "S_formula",
    "S_direct",
    "ClassSeries",
    "SplitBundleSpec",
    "analytic_height",
    "third_schur_coefficient",
    "universal_S",
    "universal_R",
    "SuiteConfig",
    "run_suite",
]

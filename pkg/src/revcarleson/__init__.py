"""Reverse Carleson measures on the disc and the ball of C^2.

Modules
-------
disc        arcs, Carleson windows and dyadic arc families
measures    finite measures on the closed disc and their window masses
quad        circle, singular radial, window and sphere quadrature
funcs       holomorphic test functions with exact derivatives
spaces      Hardy, Bloch, BMOA, Triebel-Lizorkin and Besov (quasi)norms
carleson    condition constants, verdicts and nonexistence certificates
ball        non-isotropic balls, sphere measures and kernels in C^2
cli         command-line front end
"""

from .errors import (
    CapabilityError,
    DomainError,
    EvaluationError,
    IngestionError,
    ParameterError,
    RevCarlesonError,
)
from .quad import QuadConfig
from .disc import Arc, CarlesonWindow, DiscPoint, dyadic_arc_family
from .measures import BoundaryDensity, Measure, lebesgue, load_measure
from .funcs import Blaschke, Fejer, KernelPower, Lacunary, Monomial, TaylorPolynomial, make_function
from .spaces import NormResult, SpaceSpec, besov_norm, bloch_norm, bmoa_norm, hardy_norm, triebel_norm
from .carleson import Certificate, ConditionReport, equivalence_report
from .corpus import load_corpus

__version__ = "0.1.0"

__all__ = [
    "Arc", "BoundaryDensity", "Blaschke", "CapabilityError", "CarlesonWindow", "Certificate",
    "ConditionReport", "DiscPoint", "DomainError", "EvaluationError", "Fejer", "IngestionError",
    "KernelPower", "Lacunary", "Measure", "Monomial", "NormResult", "ParameterError", "QuadConfig",
    "RevCarlesonError", "SpaceSpec", "TaylorPolynomial", "besov_norm", "bloch_norm", "bmoa_norm",
    "dyadic_arc_family", "equivalence_report", "hardy_norm", "lebesgue", "load_corpus", "load_measure",
    "make_function", "triebel_norm",
]

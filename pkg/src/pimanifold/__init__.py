"""Exact computations on left-invariant Riemannian Pi-manifolds.

All arithmetic is in :class:`fractions.Fraction`; tensors are numpy object
arrays in a left-invariant frame, so every comparison is an exact equality.
"""

from .catalog import (
    DEFAULT_PARAMETERS,
    ExampleParams,
    build_abelian,
    build_catalog,
    build_f1_example,
    build_f5_example,
    build_f11_example,
    build_para_sasaki_example,
)
from .classifier import ClassificationReport, ClassLabel, classify
from .errors import (
    IdentityViolation,
    LemmaViolation,
    NaturalityViolation,
    ParseError,
    PiManifoldError,
    ValidationError,
)
from .levi_civita import curvature_bundle, fundamental_data, koszul_levi_civita
from .natural_connection import first_natural_pipeline
from .pi_manifold import LieAlgebra, PiManifoldInstance, PiStructure, validate
from .specfile import emit_spec, parse_spec
from .tensor_core import Connection, MetricPair, Tensor, metric_inverse
from .verify import IdentityReport, run_crosscheck_suite, run_identity_suite

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PARAMETERS",
    "ClassLabel",
    "ClassificationReport",
    "Connection",
    "ExampleParams",
    "IdentityReport",
    "IdentityViolation",
    "LemmaViolation",
    "LieAlgebra",
    "MetricPair",
    "NaturalityViolation",
    "ParseError",
    "PiManifoldError",
    "PiManifoldInstance",
    "PiStructure",
    "Tensor",
    "ValidationError",
    "build_abelian",
    "build_catalog",
    "build_f1_example",
    "build_f5_example",
    "build_f11_example",
    "build_para_sasaki_example",
    "classify",
    "curvature_bundle",
    "emit_spec",
    "first_natural_pipeline",
    "fundamental_data",
    "koszul_levi_civita",
    "metric_inverse",
    "parse_spec",
    "run_crosscheck_suite",
    "run_identity_suite",
    "validate",
]

"""Marginal growth of 2x2 matrix products and triangular cocycles."""
from __future__ import annotations

from .classifier import (
    BOUNDED,
    LINEAR,
    NOT_MARGINAL,
    BoundCertificate,
    GrowthClass,
    LinearWitness,
    PreconditionError,
    RhoReport,
    bounded_certificate,
    classify,
    common_invariant_line,
    partition_by_det,
    triangularize,
    verify_rho_one,
)
from .cocycle import CocycleSpec, DeBruijnGraph, HypothesisError, LocallyConstantPotential, phi_n_direct
from .ergodic import Theorem3Result, beta, max_mean_cycle, mmax_subgraph, theorem3_limit
from .growth import (
    BudgetExceeded,
    EnumerationConfig,
    GrowthCurve,
    enumerate_growth,
    fekete_bracket,
    hull_dp_growth,
    hull_dp_matrices,
    periodic_lower_bound,
    sandwich_check,
)
from .kernels import BACKEND
from .matrix import (
    ALL,
    Mat2,
    MatrixSet,
    ScalarKindError,
    det,
    mat_mul,
    op_norm_2,
    real_eigenlines,
    spectral_radius,
    sum_norm,
    trace,
    upper_right_seminorm,
)
from .scalars import FieldMismatchError, QuadScalar, format_scalar, parse_scalar, qsqrt

__version__ = "0.1.0"

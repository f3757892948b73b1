"""Sine/cosine transform treatment of the quantum harmonic oscillator."""
from ._backend import BACKEND
from .errors import (
    BoundaryViolation,
    ClosedFormMismatch,
    ConvergenceFailure,
    DomainError,
    GridTooCoarse,
    GridTooSmall,
    NoConvergence,
    ParityMismatch,
    PoleError,
    QHOError,
    SingularityTooStrong,
    TailNotDecayed,
    UnknownFunction,
)
from .oracle import FdConfig, fd_eigensolve, reference_quadrature
from .oscillator import (
    Admissibility,
    CandidateExponent,
    Eigenpair,
    classify_exponent,
    eigenpair,
    growth_diagnostic,
    invert_candidate,
    parity_extend,
    spectrum,
    transformed_ode_residual,
)
from .quadrature import QuadratureConfig
from .transforms import GridFunction, TransformKind, forward_transform, inverse_transform

__version__ = "0.1.0"

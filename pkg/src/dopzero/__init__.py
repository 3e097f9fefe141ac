"""Evaluation and certified real zeros of Meixner and Krawtchouk polynomials."""

from .errors import (
    ConsistencyError,
    DomainError,
    DopzeroError,
    MagnitudeError,
    MeshLimitError,
    ParameterError,
    RegimeError,
    SingularPropagationError,
)
from .hypgeo import (
    Krawtchouk,
    Meixner,
    PolySpec,
    eval_by_difference,
    evaluate,
    hyp2f1_terminating,
    krawtchouk,
    meixner,
    meixner_to_krawtchouk,
    pfaff_reflect,
    pochhammer,
)
from .zeros import (
    CertifiedZero,
    ZeroSet,
    check_interlacing,
    isolate,
    jacobi_zeros,
    recurrence_coeffs,
    refine,
    sturm_sequence,
    variation_profile,
    zeros_of,
)

__version__ = "0.1.0"

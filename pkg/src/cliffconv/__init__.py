"""Clifford-valued Fourier transforms, their convolutions and translations."""

from .clifford import CliffordError, Multivector, RootOfMinusOne, parse_multivector, parse_root
from .gft import (
    CALIBRATED,
    PERIODIC,
    GftPlan,
    GridError,
    GridSpec,
    MultivectorField,
    generalized_translate,
    gft_forward,
    gft_inverse,
)
from .mustard import (
    classical_convolve,
    mustard_convolve_direct,
    mustard_convolve_spectral,
    tau_convolve,
    translate_closed_form,
)

__all__ = [
    "CALIBRATED",
    "PERIODIC",
    "CliffordError",
    "GftPlan",
    "GridError",
    "GridSpec",
    "Multivector",
    "MultivectorField",
    "RootOfMinusOne",
    "classical_convolve",
    "generalized_translate",
    "gft_forward",
    "gft_inverse",
    "mustard_convolve_direct",
    "mustard_convolve_spectral",
    "parse_multivector",
    "parse_root",
    "tau_convolve",
    "translate_closed_form",
]

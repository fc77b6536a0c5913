"""Nonlinear filter generators, their trace spectra and reciprocal equivalents."""

from .anf import AnfFunction, FilterGenerator, filter_sequence, format_anf, parse_anf
from .equivalence import (
    EquivalenceReport,
    EquivalenceTransform,
    enumerate_classes,
    equivalent_generator,
    general_transform,
    map_spectrum,
    predicted_order,
    reciprocal_transform,
    reconstruct_anf,
)
from .errors import (
    ContextMismatchError,
    InfeasibleReconstructionError,
    NotPrimitiveError,
    UnfactorableError,
)
from .gf2_field import (
    BinaryPolynomial,
    CyclotomicCoset,
    FieldContext,
    FieldElement,
    cyclotomic_cosets,
    discrete_log,
    exponent_inverse,
    field_context,
    is_primitive,
    minimal_polynomial,
    reciprocal_polynomial,
    trace,
    unit_cosets,
)
from .lfsr_core import Lfsr, generate, m_sequence, state_from_phase, trace_phase
from .linear_complexity import LinearComplexityResult, berlekamp_massey, coset_support
from .spectrum import TraceSpectrum, compute_spectrum, monomial_spectrum, synthesize

__version__ = "0.1.0"

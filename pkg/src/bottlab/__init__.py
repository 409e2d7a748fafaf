"""Graded Clifford-module calculus on truncated oscillator spaces.

Layers, bottom to top: ``clifford`` (blade arithmetic for real Clifford
algebras), ``graded`` (Z/2-graded matrices and Koszul-sign constructions),
``funcalc`` (functional calculus for the Gaussian generator pair),
``oscillator`` (truncated Hermite model, supercharge, spectra,
multiplication operators), ``verify`` (numerical suites with pass/fail
reports), ``cli`` (command-line driver).
"""

__version__ = "0.1.0"

from .clifford import (
    IsoWitness,
    MultiVector,
    Signature,
    algebra_isomorphism_check,
    blade_product,
    left_mult_operator,
    mv_multiply,
    number_operator,
    regular_representation,
    twisted_right_mult_operator,
)
from .funcalc import (
    DeltaCheck,
    GradedFunction,
    delta_on_generators,
    delta_via_xr_check,
    gaussian,
    matrix_function,
    scale,
    x_gaussian,
)
from .graded import (
    GradedMatrix,
    flip_simple,
    flip_unitary,
    graded_commutator,
    graded_tensor,
    involution,
    iota,
    tensor_product_witness,
)
from .oscillator import (
    CliffFunction,
    CompactnessProfile,
    HermiteBasis,
    OscillatorRep,
    SpectrumResult,
    b_squared_identity_check,
    bott_operator,
    clifford_operator,
    compactness_profile,
    derivative_matrix,
    dirac_operator,
    level_multiplicity,
    multiplication_operator,
    oscillator_rep,
    position_matrix,
    rescale,
    spectrum,
)
from .verify import (
    SUITES,
    SweepConfig,
    VerificationReport,
    alpha,
    bott_map,
    operator_norm,
    power_iteration_norm,
    run_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]

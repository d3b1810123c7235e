"""Generic and variant Bell inequalities for N parties with d outcomes each."""
from .bounds import (
    BoundsReport,
    b_coeff,
    closed_form_bound,
    generic_classical_bound,
    qcr,
    quantum_bound,
    variant_quarter_bound,
)
from .errors import DimensionLimitError, EnumerationLimitError, HermiticityError
from .lhv import MaxResult, Strategy, brute_force_max, classical_bell_value, sampled_max
from .linalg import expectation, kron, matpow, max_hermitian_eigenvalue
from .quantum import (
    Scenario,
    bell_operator,
    bell_value_correlator_form,
    correlation,
    fourier_matrix,
    ghz_state,
    observable,
    omega,
    optimal_state,
    phase_shift,
    raising_operator,
)

__version__ = "0.1.0"

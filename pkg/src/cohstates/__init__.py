"""Coherent states for a quantum particle on a circle and on a sphere.

Log-domain numerics, the zero-twist e(3) representation, three independent
coherent-state constructions, phase-space expectation values, and the free
rotator's energy distribution, with a CLI for reports and verification.
"""

from .logdomain import LogComplex, log_complex_mul, log_complex_sum, wrap_phase
from .specfun import gegenbauer, gegenbauer_column, hyp2f1_terminating, log_factorial
from .repspace import (BasisIndex, RepParams, StateVector, apply_J, apply_X,
                       apply_Z, apply_Z_vector_form, apply_operator,
                       basis_state, expectation, inner, inner_log,
                       relative_residual, state_scale, state_sum)
from .spinor import (SpinorState, apply_exp_minus_K, apply_K, apply_V,
                     apply_Z_from_matrix, apply_Z_matrix, apply_sigma_dot_J,
                     spinor_basis)
from .circle import (CirclePhasePoint, CircleState, CircleUncertainty,
                     circle_coherent, circle_eigen_residual, circle_expect_J,
                     circle_expect_U, circle_relative_U,
                     circle_uncertainty_report)
from .sphere import (ConstraintError, SpherePhasePoint, SphereUncertainty,
                     ZLabel, apply_rotation, axis_reference_label,
                     coherent_closed_form, coherent_ladder_generated,
                     coherent_state, coherent_triple_sum, eigen_residual,
                     expect_J, expect_X, generation_params,
                     max_amplitude_rel_diff, north_pole_state, phase_to_z,
                     relative_X, uncertainty_J)
from .rotator import (DistributionTable, argmax_j, argmax_m, classical_peak_j,
                      distribution, distribution_from_state, rotator_energy)

__version__ = "0.1.0"

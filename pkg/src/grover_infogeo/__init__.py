"""Information geometry of Grover search: Wigner-Yanase and Fubini-Study
metrics, the continuous Grover path, its deviations and their geodesics."""

from .exceptions import ConvergenceError, DomainError
from .geodesics import (
    EllipticResult,
    GeodesicSolution,
    ModelIVSolution,
    duration_gap,
    elliptic_I_N,
    elliptic_I_N_closed_form,
    geodesic_length,
    grover_geodesic,
    model_ii_geodesic,
    model_iv_path,
    solve_geodesic,
    solve_model_iv,
)
from .grover import (
    GroverInstance,
    RotationState,
    continuous_state,
    grover_angle,
    grover_family,
    optimal_steps,
    rotation_step,
    statevector_oracle,
)
from .matrix_core import Spectrum, commutator, eigendecompose, matrix_sqrt_psd
from .paths import (
    ActualityReport,
    SymmetricProbabilityPath,
    current_density,
    el_residual,
    fisher_info_function,
    grover_path,
    kinetic_energy,
    model_ii_path,
    model_iii_path,
    model_iv_el_system,
)
from .quantum_metrics import (
    DensityFamily,
    PureStateFamily,
    cm_function_wy,
    fubini_study_speed,
    quantum_fisher_wy,
    skew_information,
    wy_inner_product,
    wy_line_element,
)

__version__ = "0.1.0"

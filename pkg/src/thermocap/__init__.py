"""Thermal information capacity of quantum memories."""
from .accessible import (
    AccessibleSet,
    accessible_set,
    contains,
    extremal_state,
    kappa,
    tip_state,
    z_conjugate,
)
from .asymptotics import (
    TypeClassCode,
    asymptotic_tic,
    finite_n_rate,
    gibbs_weights,
    limiting_rate,
    log2_multinomial,
)
from .estimators import JCEncodingTimer, ThermalCapacityTransformer
from .exceptions import InvalidStateError, NumericalInvariantError
from .jc import (
    JCConfig,
    achieved_capacity,
    bath_weights,
    evolve_reduced,
    time_to_efficiency,
    times_to_efficiencies,
)
from .solver import TICResult, oracle_tic, q_of_sbar, tic, xi
from .states import (
    Code,
    QubitState,
    ThermalContext,
    binary_entropy,
    check_density_matrix,
    free_energy,
    gibbs_state,
    holevo_information,
    negentropy,
    relative_entropy,
    relative_entropy_of_coherence,
    von_neumann_entropy,
)

__version__ = "0.1.0"

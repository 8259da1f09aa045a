"""Two-qubit quantum-correlation dynamics under phase and amplitude damping."""

from ._backend import backend_name
from .channels import (
    AMPLITUDE,
    PHASE,
    QubitChannel,
    amplitude_damping,
    apply_two_qubit,
    dilate,
    phase_damping,
    purify_double,
    purify_single,
)
from .measures import (
    CorrelationReport,
    DiscordResult,
    MeasurementBasis,
    classical_correlation,
    concurrence,
    conditional_entropy,
    correlation_report,
    discord,
    discord_full,
    eof,
    geometric_discord,
    mutual_information,
    negativity,
    symmetrized_discord,
)
from .states import (
    PHI,
    PSI,
    DensityMatrix,
    PureState,
    StateFamily,
    alpha_from_concurrence,
    as_density_matrix,
    bell_state,
    make_pure,
    make_werner,
    to_density,
)

__version__ = "0.1.0"

__all__ = [
    "AMPLITUDE",
    "PHASE",
    "PHI",
    "PSI",
    "CorrelationReport",
    "DensityMatrix",
    "DiscordResult",
    "MeasurementBasis",
    "PureState",
    "QubitChannel",
    "StateFamily",
    "alpha_from_concurrence",
    "amplitude_damping",
    "apply_two_qubit",
    "as_density_matrix",
    "backend_name",
    "bell_state",
    "classical_correlation",
    "concurrence",
    "conditional_entropy",
    "correlation_report",
    "dilate",
    "discord",
    "discord_full",
    "eof",
    "geometric_discord",
    "make_pure",
    "make_werner",
    "mutual_information",
    "negativity",
    "phase_damping",
    "purify_double",
    "purify_single",
    "symmetrized_discord",
    "to_density",
]

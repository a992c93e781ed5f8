"""Energy transport and correlated coherence between two thermal quantum systems."""
from .dynamics import EvolutionConfig, TrajectoryRecord, evolve, propagator, run_trajectory, taylor_step
from .expansion import (
    ExpansionCoefficients,
    RatioResult,
    RatioStatus,
    Scenario,
    classify_scenario,
    coefficients,
    initial_acceleration,
    ratio,
)
from .measures import (
    DIVERGENT,
    MeasureReport,
    classical_correlation,
    correlated_coherence,
    energy,
    is_divergent,
    measure_report,
    mutual_information,
    relative_entropy,
    skew_information,
    von_neumann_entropy,
)
from .scenarios import (
    ModelParams,
    build_two_qubit_system,
    product_scenario,
    reproduce_fig2,
    zero_cc_scenario,
)
from .states import (
    BipartiteSystem,
    ThermalParams,
    dephase,
    product_of_marginals,
    thermal_state,
    validate_state,
    zero_cc_state,
)

__version__ = "0.1.0"

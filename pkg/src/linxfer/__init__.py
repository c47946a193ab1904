"""Linear-ramp QAOA parameter transfer and the strategies it is compared against."""
from .problems import (
    IsingInstance,
    Normalization,
    edge_density,
    energy,
    gen_maxcut,
    gen_random_ising,
    gen_sk,
    load_instance,
    normalization_factor,
    normalize_instance,
    save_instance,
    scale_instance,
)
from .schedules import (
    PRESETS,
    REFERENCE_PARAMS,
    ROUGH_GUESS_PARAMS,
    FourierCoeffs,
    LinearFit,
    LinearParams,
    Schedule,
    fit_linear,
    fourier_to_schedule,
    interp_extend,
    linear_schedule,
)
from .simulator import CostTable, SampleSet, StateVector, build_cost_table, evolve, expectation, sample
from .oracle import GroundTruth, brute_force_min, simulated_annealing
from .optimize import ObjectiveTrace, global_minimize, local_minimize
from .strategies import (
    StrategyReport,
    linxfer_apply,
    linxfer_train,
    run_fourier,
    run_interp,
    run_standard,
)

__version__ = "0.1.0"

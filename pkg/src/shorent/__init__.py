"""State-vector simulation of Shor's factoring algorithm with per-gate
tracking of the Groverian entanglement measure."""

from .statevector import (
    GateOp,
    PeriodicStateSpec,
    StateVector,
    apply_gate,
    controlled_phase,
    hadamard,
    make_basis_state,
    make_equal_superposition,
    make_periodic_state,
    make_random_isotropic_state,
    make_random_product_state,
    measure_subregister,
    read_state_json,
    write_state_json,
)
from .groverian import (
    GroverianResult,
    OptimizerState,
    ProductAnsatz,
    brute_force_pmax,
    maximize,
    overlap,
    update_single_qubit,
)
from .shor import (
    CircuitSchedule,
    PostprocessResult,
    PreprocessResult,
    ShorInstance,
    build_qft_schedule,
    choose_register_size,
    continued_fraction_recover,
    factor,
    find_order,
    modexp_table,
    postprocess,
    preprocess,
    run_qft,
)
from .experiments import (
    SweepRecord,
    TraceRecord,
    run_fig2,
    run_fig3,
    run_fig4,
    run_periodic_study,
)

__version__ = "0.1.0"

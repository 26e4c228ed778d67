"""Exact dynamics of qubits in lossy Lorentzian reservoirs.

Single-excitation states of one, two or three independently damped qubits
are evolved in closed form; coherence, pairwise concurrence and the
three-qubit lower bound of concurrence are preserved by spectator qubits
sharing each reservoir.  Two independent numerical oracles (a memory-kernel
integrator and a discretised-mode integrator) validate every closed form.
"""

from ._kernels import BACKEND
from .dynamics import (
    BASIS_ONE,
    BASIS_THREE,
    BASIS_TWO,
    DensityMatrix,
    DynamicalMap,
    SubsystemSpec,
    chi_map,
    coherence_asymptote,
    coherence_l1,
    epr_state,
    partial_trace,
    single_qubit_state,
    three_qubit_closed_form,
    three_qubit_evolve,
    two_qubit_closed_form,
    two_qubit_evolve,
    w_state,
)
from .entanglement import (
    Bipartition,
    concurrence_asymptote,
    concurrence_epr,
    concurrence_wootters,
    lbc_asymptote,
    lbc_generic,
    lbc_w,
    so4_generators,
)
from .oracle import (
    ModeGrid,
    OracleIntegrationError,
    SolverConfig,
    excitation_norm,
    integrate_modes,
    integrate_volterra,
)
from .reservoir import (
    AmplitudeVector,
    Regime,
    ReservoirSpec,
    amplitude_general,
    classify_regime,
    collective_envelope,
    correlation_kernel,
    decay_rate,
    spectral_density,
    survival_factor,
)
from .scenario import (
    ScenarioConfig,
    ScenarioTable,
    SeriesSpec,
    SubsystemParams,
    load_config,
    run_scenario,
    save_config,
)
from .presets import PRESETS
from .verify import VerifyReport, run_verify

__version__ = "0.1.0"

"""Simulation and analysis of the optical quantum-Zeno CZ gate."""

from .cascade import (
    DEFAULT_N,
    CascadeOutput,
    GateConfig,
    run_cascade,
    tau_closed_form,
    tau_ideal,
    tau_matrix_oracle,
)
from .distillation import (
    DistillationSpec,
    distilled_cz_success,
    single_photon_distill,
    tau_gate,
    two_photon_distill,
)
from .errors import (
    BracketError,
    DegenerateClosedFormError,
    DomainError,
    InvalidSpecError,
    NonFiniteObjectiveError,
    ZenoError,
)
from .fock import (
    AbsorberParams,
    BeamSplitterParams,
    Mode,
    Sign,
    TwoModeState,
    apply_absorber_pair,
    apply_beamsplitter,
    apply_rail_attenuator,
)
from .fusion import (
    FusionPoint,
    break_even_kappa,
    classify_heralded_outcome,
    fusion_success,
    linear_optics_loss,
    zeno_loss,
)
from .metrics import (
    ComputationalAmplitudes,
    GateReport,
    brute_force_report,
    heralded_fidelity,
    ideal_gate_report,
    lossy_gate_report,
)
from .optimize import OptimizationResult, maximize_scalar
from .sweep import SweepSpec, run_sweep

__version__ = "0.1.0"

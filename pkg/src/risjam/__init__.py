"""RIS-assisted satellite downlink simulator and SJNR optimizer."""

from .scenario import (
    DEFAULT_CONFIG,
    AoaAngles,
    Position3D,
    Scenario,
    ValidationError,
    aoa_angles,
    db_to_linear,
    default_scenario,
    distance,
    linear_to_db,
    load_config,
    noise_power_from,
    scenario_from_config,
)
from .channel import (
    ChannelSet,
    PhaseConfig,
    build_channel_set,
    cascade_channel,
    direct_channel,
    identity_phases,
    ris_link_channel,
    steering_vector,
)
from .link import EffectiveGains, SjnrReport, effective_gains, evaluate, sjnr
from .sdp_core import (
    FractionalSolution,
    HermitianMatrix,
    SdpSolution,
    extract_rank_one,
    solve_fractional_sdp,
    solve_unit_diag_sdp,
)
from .optimizer import (
    LiftedProblem,
    OptimizerSettings,
    OptResult,
    PhaseSolveResult,
    alternate,
    lift,
    optimize,
    optimize_phases,
    optimize_power,
)
from .harness import (
    CSV_HEADER,
    SweepRow,
    SweepSpec,
    baseline_identity,
    baseline_random_mean,
    fig2_spec,
    fig3_spec,
    fig4_spec,
    format_csv_rows,
    oracle_exhaustive,
    run_sweep,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "DEFAULT_CONFIG",
    "AoaAngles",
    "ChannelSet",
    "EffectiveGains",
    "FractionalSolution",
    "HermitianMatrix",
    "LiftedProblem",
    "OptResult",
    "OptimizerSettings",
    "PhaseConfig",
    "PhaseSolveResult",
    "Position3D",
    "Scenario",
    "SdpSolution",
    "SjnrReport",
    "SweepRow",
    "SweepSpec",
    "ValidationError",
    "alternate",
    "aoa_angles",
    "baseline_identity",
    "baseline_random_mean",
    "build_channel_set",
    "cascade_channel",
    "db_to_linear",
    "default_scenario",
    "direct_channel",
    "distance",
    "effective_gains",
    "evaluate",
    "extract_rank_one",
    "fig2_spec",
    "fig3_spec",
    "fig4_spec",
    "format_csv_rows",
    "identity_phases",
    "lift",
    "linear_to_db",
    "load_config",
    "noise_power_from",
    "optimize",
    "optimize_phases",
    "optimize_power",
    "oracle_exhaustive",
    "ris_link_channel",
    "run_sweep",
    "scenario_from_config",
    "sjnr",
    "solve_fractional_sdp",
    "solve_unit_diag_sdp",
    "steering_vector",
    "write_sweep_csv",
    "__version__",
]

"""Design toolkit for classically hard random quantum circuits on planar
processors: pattern enumeration, simulation-cost ranking, fidelity
prediction, and a verification simulator."""

from .errors import (
    CapacityExceededError,
    DegenerateCutError,
    InvalidSpec,
    NoFeasibleCutError,
    RqcError,
)
from .fidelity import (
    FidelityEstimate,
    GateCounts,
    NoiseModel,
    circuit_fidelity,
    gate_counts,
    predict_fidelity,
)
from .lattice import (
    Bipartition,
    Bond,
    CutPath,
    DualGraph,
    Lattice,
    LatticeSpec,
    bipartition_from_path,
    build_dual,
    build_lattice,
    make_cut_path,
    to_canonical,
    to_drawing,
)
from .patterns import (
    BASE_SEQUENCE,
    CircuitLayout,
    CycleSequence,
    PatternCode,
    assemble_circuit,
    baseline_code,
    code_count,
    code_from_index,
    code_index,
    cycle_sequence,
    enumerate_codes,
    letter_layers,
    parse_bits,
    pattern_layer,
    tail_sequences,
)
from .sfa import (
    CrossGate,
    PathSearchConfig,
    SfaBreakdown,
    SfaCostModel,
    cross_gates,
    default_e_star,
    detect_dcd,
    detect_wedges,
    enumerate_cut_paths,
    evaluate_path,
    sfa_cost,
    straight_crossings,
)

__version__ = "0.1.0"

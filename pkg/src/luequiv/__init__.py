"""Local-unitary equivalence of bipartite pure states."""
from .bipartite import (
    SchmidtDecomposition,
    StateVector,
    entanglement_entropy,
    equal_up_to_phase,
    make_state,
    max_entangled,
    overlap,
    partial_trace,
    schmidt,
)
from .equivalence import (
    CounterexampleParams,
    FilterOperator,
    Inconsistent,
    NoWitness,
    OneSidedWitness,
    Parametrized2x2Unitary,
    TwoSidedWitness,
    commutation_gap,
    filter_from_max_entangled,
    max_overlap_one_sided,
    max_overlap_two_sided,
    one_sided_witness,
    relation_chain_check,
    solve_one_sided_2x2,
    two_sided_witness,
)
from .linalg import SvdResult, complete_to_unitary, eigh, svd

__version__ = "0.1.0"

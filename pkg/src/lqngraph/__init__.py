"""Colored-graph toolkit for linear quantum networks.

Maps N-particle, N-detector linear networks to colored weighted graphs,
enumerates the perfect matchings that carry the post-selected no-bunching
state, classifies the entanglement of that state both structurally (from
the PM diagram) and numerically (Schmidt ranks), and constructs networks
for standard entangled target states.
"""

from .designers import (
    design_cluster4,
    design_dicke2,
    design_ghz,
    design_w,
    preset_beamsplitter,
    preset_tritter,
)
from .entanglement import (
    Bipartition,
    SeparabilityReport,
    Verdict,
    build_report,
    concurrence2,
    concurrence2_raw,
    finest_partition,
    generic_amplitudes,
    lemma1_separable_vertices,
    lemma2_partition,
    schmidt_rank,
    theorem1_check,
    theorem2_w_optimal_check,
)
from .errors import LQNError
from .graphs import (
    DirectedView,
    PerfectMatching,
    PMDiagram,
    diagram_of_network,
    elementary_cycles,
    enumerate_pms,
    initial_perfect_matching,
    pm_diagram,
    relabel_to_loops,
    strongly_connected,
    to_directed,
    weak_components,
)
from .io import DotRenderOptions, View, export_dot, parse_network, serialize_network, serialize_state
from .model import (
    BipartiteView,
    Color,
    ColoredAdjacency,
    GeneralTransform,
    NetworkSpec,
    NormalizationMode,
    Statistics,
    exchange_rows,
    is_unitary,
    reduce_general_transform,
    to_adjacency,
    to_bipartite,
    to_general_transform,
    validate_general_transform,
    validate_network,
)
from .states import (
    NoBunchState,
    assemble_network_state,
    assemble_state,
    max_amplitude_difference,
    normalize,
    oracle_state,
    state_equiv,
)

__version__ = "0.1.0"

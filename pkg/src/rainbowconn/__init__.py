"""Rainbow edge/vertex colourings of graphs via splitting constructions.

Library layout:

- ``graphs``: Graph/Multigraph types, BFS layers, diameter, Euler circuits,
  exact edge expansion.
- ``models``: seeded generators: pairing model, regular graphs,
  Hamiltonian cycles, matchings, edge-disjoint unions, gap sequences and
  the subdivided cycle-plus-matching model.
- ``edge_colouring`` / ``vertex_colouring``: the split colourings and the
  pipelines built from them.
- ``verify``: exact rainbow-connectivity oracles, certificate replay,
  density audits and Monte Carlo tail checks.
- ``experiments`` / ``plots`` / ``cli``: seeded batch runs, scaling
  summaries, figures, and the command-line interface.
"""

from .edge_colouring import (
    EdgeColouring,
    EdgeSplit,
    connect_components,
    euler_degree_split,
    expander_split,
    rc_min_degree,
    rc_random_regular,
    split_colouring,
)
from .errors import (
    BoundViolationError,
    CertificateError,
    ConfigError,
    DisconnectedGraphError,
    EnumerationCapError,
    InvalidInputError,
    OddDegreeError,
    RainbowError,
    RetriesExhaustedError,
    SplitConditionError,
)
from .graphs import (
    DistanceLayers,
    Graph,
    Multigraph,
    bfs_layers,
    build_graph,
    connected_components,
    diameter,
    eccentricities,
    edge_expansion_exact,
    edge_expansion_sampled,
    euler_circuit,
    is_connected,
)
from .models import (
    GapSequence,
    PairingState,
    SubdivisionRecord,
    cycle_graph,
    cycle_plus_perfect_matching,
    gap_sequence_from_subset,
    oplus_union,
    random_hamiltonian_cycle,
    random_matching,
    sample_connected_regular,
    sample_pairing,
    sample_regular_fast,
    sample_simple_regular,
    subdivide_cycle_model,
    subset_from_gap_sequence,
)
from .verify import (
    DensityAudit,
    DiameterStats,
    ExpansionAudit,
    McReport,
    VerifyReport,
    Witness,
    check_certificate,
    density_audit,
    diameter_statistics,
    is_rainbow_edge_connected_exact,
    is_rainbow_vertex_connected_exact,
    mc_gap_tail,
    mc_pairing_edge_probability,
    neighbourhood_expansion_audit,
)
from .vertex_colouring import (
    PartitionParams,
    PartitionResult,
    RvcResult,
    VertexColouring,
    VertexSplit,
    lll_partition,
    rvc_random_regular,
    stitch_components,
    vertex_split_colouring,
)

__version__ = "0.1.0"

"""Delta-density analysis of link streams.

Pair, link-set, stream, node and neighborhood densities over sliding windows,
characteristic times from geometric delta sweeps, and node roles derived
from them.
"""

from .density import (
    GapSummary,
    delta_clustering,
    graph_density,
    node_density,
    pair_density,
    set_density,
    stream_density,
)
from .errors import (
    BoundsError,
    DegenerateStreamError,
    DomainError,
    EmptyStreamError,
    LinkStreamError,
    NodeNotFoundError,
    TraceParseError,
)
from .profile import (
    CharacteristicTime,
    Ccdf,
    DeltaGrid,
    DensityProfile,
    ccdf,
    characteristic_time,
    density_profile,
    geometric_grid,
    neighborhood_profile,
    node_characteristic_times,
    node_profile,
    pair_characteristic_times,
    pair_profile,
    set_profile,
    stream_grid,
    stream_profile,
)
from .roles import (
    Role,
    RoleReport,
    RuleParams,
    classify_roles,
    count_nonzero_cc_nodes,
    degree_vs_tau_cc,
    tau_clustering,
)
from .stream import (
    ContactSeries,
    Event,
    InducedGraph,
    LinkStream,
    PairKey,
    build_stream,
    combine,
    contact_series,
    induced_graph,
    neighborhood,
    pair_key,
    substream_nodes,
    substream_pairs,
)

__version__ = "0.1.0"

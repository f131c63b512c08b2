"""Chord-dense cycles in graphs of large minimum degree.

Rotation-based search for cycles with many chords, contraction plans that
certify average-degree growth, constructive cyclic clique-minor models, and a
brute-force oracle for cross-checking all of it on small instances.
"""

from .contraction import (
    ContractionReport,
    choose_average_plan,
    half_contraction,
    passive_contraction,
    pipeline,
)
from .errors import (
    ClosureShortfall,
    GraphError,
    InternalInvariantError,
    ParseError,
    PreconditionError,
    RuleNotApplicable,
    SizeGuardExceeded,
    ValidationError,
)
from .graph import (
    ContractionPlan,
    DegeneracyReport,
    DegreeStats,
    Graph,
    chord_budget_degeneracy_bound,
    contract_edges,
    degeneracy,
    degree_stats,
    edge,
    generate,
    induced_subgraph,
    parse_edge_list,
    to_dot,
)
from .lollipop import (
    ActiveClosure,
    DenseCycleCertificate,
    Lollipop,
    WitnessPath,
    active_closure,
    find_dense_cycle,
    initial_lollipop,
    replay,
    rotate,
    verify_closure_lemmas,
)
from .minors import (
    CyclicMinorModel,
    GridOutcome,
    GridPartition,
    grid_block_partition,
    k3_model,
    k4_model,
    k5_model,
    k6_from_bipartite,
    kll_prime_graph,
    kll_prime_model,
    verify_model,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveClosure",
    "ClosureShortfall",
    "ContractionPlan",
    "ContractionReport",
    "CyclicMinorModel",
    "DegeneracyReport",
    "DegreeStats",
    "DenseCycleCertificate",
    "Graph",
    "GraphError",
    "GridOutcome",
    "GridPartition",
    "InternalInvariantError",
    "Lollipop",
    "ParseError",
    "PreconditionError",
    "RuleNotApplicable",
    "SizeGuardExceeded",
    "ValidationError",
    "WitnessPath",
    "active_closure",
    "choose_average_plan",
    "chord_budget_degeneracy_bound",
    "contract_edges",
    "degeneracy",
    "degree_stats",
    "edge",
    "find_dense_cycle",
    "generate",
    "grid_block_partition",
    "half_contraction",
    "induced_subgraph",
    "initial_lollipop",
    "k3_model",
    "k4_model",
    "k5_model",
    "k6_from_bipartite",
    "kll_prime_graph",
    "kll_prime_model",
    "parse_edge_list",
    "passive_contraction",
    "pipeline",
    "replay",
    "rotate",
    "to_dot",
    "verify_closure_lemmas",
    "verify_model",
    "__version__",
]

"""Fiber graphs on lattice polytopes.

Build the graph on the integer points of a lattice polytope whose edges
come from a symmetric set of allowed differences, realize arbitrary simple
graphs as such fiber graphs through a family of constructive embeddings,
and compute certified brackets on the smallest ambient dimension in which
a graph admits a full-dimensional realization.
"""

from .embed import (
    DpsCheck,
    DpsPointSet,
    Embedding,
    dps_point_set,
    embed_apex,
    embed_chromatic,
    embed_complete_multipartite,
    embed_cycle,
    embed_dps,
    embed_edgeless,
    embed_path,
    embed_product,
    embed_simplex,
    find_dps_point_set,
    is_distinct_pair_sum,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DimensionMismatchError,
    EmbeddingError,
    FiberDimError,
    ImproperColoringError,
    MoveSetError,
    ParseError,
    RankDeficientError,
)
from .fiber import (
    BipartiteCriterion,
    FiberGraph,
    MinimalityReport,
    MoveSet,
    build,
    check_bipartite_criterion,
    is_markov_basis,
    is_minimal,
    min_markov_basis_size,
    validate_move_set,
)
from .graphs import (
    Coloring,
    Graph,
    GraphProperties,
    NodeMapping,
    cartesian_product,
    color,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    empty_graph,
    is_isomorphic,
    is_proper_coloring,
    path_graph,
    properties,
    star_graph,
    verify_isomorphism,
)
from .lattice import (
    AffineLatticeMap,
    EnumerationLimits,
    FullDimReduction,
    HnfDecomposition,
    LatticePolytope,
    QuotientReport,
    Sublattice,
    dimension,
    enumerate_lattice_points,
    full_dim_reduce,
    hermite_normal_form,
    is_normal_point_set,
    lattice_quotient_distinct,
)
from .solver import (
    SEARCH_BUDGET_EXCEEDED,
    SEARCH_FOUND,
    SEARCH_NONE_IN_BOX,
    DifferenceCertificate,
    Effort,
    ExactSearchResult,
    FdimBracket,
    LowerCertificate,
    fdim_bracket,
    fdim_exact_search,
    is_difference_graph,
    verify_difference_certificate,
)

__version__ = "0.1.0"

"""Curvature-tensor symmetry algebra, graph and fuzzy-graph analogs, and
eigenstructure-based Petrov classification."""

from .symcore import (
    DIMENSION,
    METRIC_SIGNATURE,
    ConflictingEntry,
    DegenerateNonzero,
    PairBasis,
    PairSlot,
    RiemannComponents,
    antisym_pair,
    basis_pairs,
    cyclic_quads,
    cyclic_sum,
    cyclic_symmetrization,
    from_component_list,
    generalized_count,
    get_component,
    independent_component_count,
    pair_count,
    pair_matrix,
    pair_slot,
    project_bianchi,
    random_riemann,
    ricci,
    ricci_matrix,
    symmetry_space_dimension_oracle,
    zero_riemann,
)
from .graphana import (
    Edge,
    GeneralizedGraphSpec,
    Graph,
    GraphVariant,
    OddParityError,
    Orientation,
    RiemannGraphSpec,
    STANDARD_SPEC,
    Vertex,
    edge_count,
    enumerate_variants,
    export_dot,
    export_graph,
    export_structured,
    k6_structure,
    pair_vertex_count,
    parse_structured,
    variant_graph,
)
from .fuzzy import (
    BridgeMismatch,
    EpsilonLoop,
    FuzzyGraph,
    cycle_sign,
    domination_set,
    epsilon_loop,
    fuzzy_riemann_graph,
    fuzzy_to_graph,
    fuzzy_trace_b,
    fuzzy_union,
    is_complete,
    levi_civita,
    strong_arcs,
)
from .petrov import (
    BlockInconsistency,
    Blocks,
    EigenSolution,
    NotSymmetric,
    NotTraceless,
    PetrovType,
    SixMatrix,
    assemble_six_matrix,
    blocks,
    classification_report,
    classify,
    eigen,
    lambda_mat,
    omega,
    psi,
    sigma,
    trace_b,
)
from .cli import (
    IndexExpression,
    Term,
    canonical_quad,
    canonicalize_expression,
    dump_component_document,
    evaluate_expression,
    format_expression,
    ingest,
    parse_expression,
)

__version__ = "0.1.0"

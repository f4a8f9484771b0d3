"""circlekit: circle graphs, local complementation, and graph states."""

from .chords import (
    ChordDiagram,
    enumerate_diagrams,
    format_word,
    interlacement_graph,
    is_circle_graph,
    parse_word,
    prop5_embed,
)
from .errors import (
    BoundExceeded,
    CircleKitError,
    EmbeddingError,
    GraphParseError,
    InvalidVertexError,
    NotAnEdgeError,
    OrbitCapExceeded,
    PreconditionError,
    RlcValidityError,
    TheoremViolation,
    WordParseError,
)
from .graphs import (
    LabeledGraph,
    LabeledMultigraph,
    VertexMultiset,
    count_lc_orbit,
    delete_vertex,
    is_pivot_minor,
    is_vertex_minor,
    lc_orbit,
    lc_sequence,
    local_complement,
    pivot,
    pivot_orbit,
)
from .graphio import emit_graph, parse_graph, parse_graph6, to_graph6
from .planar import (
    Face,
    PlaneMultigraph,
    faces,
    fundamental_graph,
    planar_code_stabilizers,
    plane_from_json,
    plane_to_json,
    spanning_tree,
    theorem2_converse,
    theorem2_forward,
)
from .rankwidth import (
    RankDecomposition,
    comparability_grid,
    comparability_grid_diagram,
    cut_rank,
    rank_width_by_tree_enumeration,
    rank_width_exact,
    verify_one_third_lemma,
)
from .rlc import (
    RlcInstance,
    enumerate_valid_multisets,
    find_nontrivial_r_incident,
    is_independent,
    is_r_incident,
    lemma2_witness,
    normalize_multiset,
    r_local_complement,
)
from .stabilizer import (
    PauliOperator,
    StabilizerTableau,
    apply_hadamards,
    graph_state_tableau,
    is_stabilized,
    lc_equivalent,
    measure_pauli,
    tableau_from_generators,
)
from .verify import RunReport, plane_suite, run_verifier

__version__ = "0.1.0"

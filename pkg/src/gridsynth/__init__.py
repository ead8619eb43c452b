"""gridsynth: object-graph program synthesis for ARC-style grid tasks."""

from .grids import (
    Grid,
    InvalidGrid,
    MalformedDocument,
    Task,
    TestPair,
    TrainPair,
    parse_task,
    serialize_prediction,
    serialize_task,
)
from .graphs import (
    ABSTRACTIONS,
    AbstractedGraph,
    CONNECTED,
    GraphEdge,
    ObjectNode,
    VERTICAL,
    abstract,
    abstract_connected,
    abstract_vertical,
    build_edges,
    detect_background,
    reconstruct,
)
from .filters import eval_filter, generate_filters
from .bindings import DIRECTIONS, bind_param
from .transforms import ArityMismatch, Pattern, TransformStep, UnknownTransform, apply_transform
from .programs import (
    FullOperation,
    MalformedProgram,
    Program,
    apply_operation,
    apply_program,
    program_from_json,
    program_to_json,
)
from .enumeration import EnumerationConfig, enumerate_operations, harvest_patterns
from .constraints import (
    CONSTRAINT_KINDS,
    acquire_constraints,
    check_constraint,
    pair_nodes,
    violates,
)
from .search import (
    DimensionMismatch,
    SolveConfig,
    SolveResult,
    SolveStats,
    expand,
    hash_state,
    score_graphs,
    solve,
)

__version__ = "0.1.0"

"""Recognition and optimal realization of cactus metrics.

A finite metric is a cactus metric when some edge-weighted X-cactus (a
connected graph whose edges each lie on at most one cycle, with every
degree-<=2 vertex labeled) reproduces it through shortest paths.  Such a
metric has a unique optimal (minimum total weight) realization; this
package decides membership, constructs the realization with a certificate,
converts graphs back to metrics, compactifies non-optimal cactus
realizations, and generates seeded random instances for testing.
"""

from .cycles import (
    CyclicOrder,
    NotCyclelike,
    canonical_cycle,
    is_optimal_cycle,
    recognize_optimal_cycle,
    slack_structure_check,
    slack_vertices,
)
from .decompose import (
    CutPoint,
    DecompositionTree,
    adjoin_point,
    decompose,
    find_labeled_cut_vertex,
    find_virtual_cut_point,
)
from .errors import (
    CactusMetricsError,
    MetricAxiomError,
    NotCactusMetricError,
    UnknownLabelError,
)
from .estimator import CactusRealizer
from .generate import (
    GenSpec,
    bruteforce_optimal_cycle,
    gen_cactus,
    gen_tree,
    perturb_metric,
)
from .graph import (
    BlockStructure,
    WeightedGraph,
    XCactus,
    blocks,
    glue,
    induced_metric,
    is_cactus,
    is_minimal_realization,
    is_x_cactus,
    labeled_isomorphic,
    make_graph,
    normalize_triangles,
    suppress_unlabeled_degree2,
    total_weight,
    verify_realization,
)
from .metric import (
    FiniteMetric,
    closest_pair,
    gromov_product,
    is_between,
    restrict,
    validate_metric,
)
from .pipeline import (
    Certificate,
    CompactificationStep,
    MetricKind,
    RealizationResult,
    classify_metric,
    compactify,
    compactify_trace,
    optimal_weight,
    realize_cactus,
)
from .values import EXACT, Comparator, Value, tolerant

__version__ = "0.1.0"

__all__ = [
    "BlockStructure", "CactusMetricsError", "CactusRealizer", "Certificate",
    "Comparator", "CompactificationStep", "CutPoint", "CyclicOrder",
    "DecompositionTree", "EXACT", "FiniteMetric", "GenSpec", "MetricAxiomError",
    "MetricKind", "NotCactusMetricError", "NotCyclelike", "RealizationResult",
    "UnknownLabelError", "Value", "WeightedGraph", "XCactus", "adjoin_point",
    "blocks", "bruteforce_optimal_cycle", "canonical_cycle", "classify_metric",
    "closest_pair", "compactify", "compactify_trace", "decompose",
    "find_labeled_cut_vertex", "find_virtual_cut_point", "gen_cactus",
    "gen_tree", "glue", "gromov_product", "induced_metric", "is_between",
    "is_cactus", "is_minimal_realization", "is_optimal_cycle", "is_x_cactus",
    "labeled_isomorphic", "make_graph", "normalize_triangles",
    "optimal_weight", "perturb_metric", "realize_cactus",
    "recognize_optimal_cycle", "restrict", "slack_structure_check",
    "slack_vertices", "suppress_unlabeled_degree2", "tolerant",
    "total_weight", "validate_metric", "verify_realization",
]

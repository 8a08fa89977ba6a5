"""Top-level algorithms: recognize-and-realize, compactification of
non-optimal cactus realizations, and metric classification.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .cycles import CyclicOrder, NotCyclelike, recognize_optimal_cycle
from .decompose import DecompositionTree, decompose
from .errors import NotCactusMetricError, PreconditionError
from .graph import (
    WeightedGraph,
    XCactus,
    blocks,
    cycle_count,
    edge_graph,
    glue,
    induced_metric,
    is_minimal_realization,
    is_x_cactus,
    make_graph,
    shortest_paths_from,
    strip_synthetic_labels,
    suppress_unlabeled_degree2,
    total_weight,
    verify_realization,
)
from .metric import FiniteMetric
from .values import EXACT, Comparator, Value


class MetricKind(enum.Enum):
    TREE_METRIC = "TreeMetric"
    CYCLELIKE = "Cyclelike"
    CACTUS_GENERAL = "CactusGeneral"
    NOT_CACTUS = "NotCactus"


@dataclass(frozen=True)
class Certificate:
    """Checks the pipeline performs on its own output before accepting it."""

    verified_metric_equality: bool
    per_cycle_no_slack: bool
    x_cactus_invariants: bool

    @property
    def passed(self) -> bool:
        return (self.verified_metric_equality and self.per_cycle_no_slack
                and self.x_cactus_invariants)

    def as_dict(self) -> dict:
        return {
            "verified_metric_equality": self.verified_metric_equality,
            "per_cycle_no_slack": self.per_cycle_no_slack,
            "x_cactus_invariants": self.x_cactus_invariants,
        }


@dataclass(frozen=True)
class Rejection:
    """Machine-readable reason why a metric is not a cactus metric."""

    stage: str  # "leaf_not_cyclelike" | "leaf_size_three" | "certificate"
    leaf_labels: Optional[tuple[str, ...]] = None
    reason: Optional[str] = None
    witnesses: tuple = ()

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "leaf_labels": list(self.leaf_labels) if self.leaf_labels else None,
            "reason": self.reason,
            "witnesses": [str(w) for w in self.witnesses],
        }

    def __str__(self):
        parts = [self.stage]
        if self.reason:
            parts.append(self.reason)
        if self.leaf_labels:
            parts.append("leaf=" + ",".join(self.leaf_labels))
        if self.witnesses:
            parts.append("witnesses=" + ",".join(map(str, self.witnesses)))
        return "; ".join(parts)


@dataclass(frozen=True)
class RealizationResult:
    realized: bool
    cactus: Optional[XCactus]
    certificate: Optional[Certificate]
    rejection: Optional[Rejection]
    decomposition: DecompositionTree

    @property
    def graph(self) -> Optional[WeightedGraph]:
        return self.cactus.graph if self.cactus else None

    def kind(self) -> MetricKind:
        if not self.realized:
            return MetricKind.NOT_CACTUS
        g = self.cactus.graph
        if cycle_count(g) == 0:
            return MetricKind.TREE_METRIC
        bs = blocks(g)
        if (len(bs.blocks) == 1 and bs.blocks[0].is_cycle
                and len(g.vertices) == len(self.cactus.x_labels)):
            return MetricKind.CYCLELIKE
        return MetricKind.CACTUS_GENERAL


def _cycle_blocks_with_order(g: WeightedGraph):
    """Yield (block, cyclic vertex order) for every cycle block of g."""
    for b in blocks(g).blocks:
        if not b.is_cycle:
            continue
        nbrs: dict[int, list[int]] = {v: [] for v in b.vertices}
        for u, v, _ in b.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        start = b.vertices[0]
        order = [start, min(nbrs[start])]
        while len(order) < len(b.vertices):
            a, prev = order[-1], order[-2]
            order.append(nbrs[a][0] if nbrs[a][0] != prev else nbrs[a][1])
        yield b, order


def _cycles_slack_free(g: WeightedGraph, cmp: Comparator):
    """Check every cycle of g against the full shortest-path metric: no
    vertex may be slack.  Returns (ok, witness vertex or None)."""
    adj = g.adjacency()
    dist_cache: dict[int, dict[int, Value]] = {}

    def dist(u, v):
        if u not in dist_cache:
            dist_cache[u] = shortest_paths_from(adj, u)
        return dist_cache[u][v]

    for _, order in _cycle_blocks_with_order(g):
        k = len(order)
        for i in range(k):
            a, v, b = order[(i - 1) % k], order[i], order[(i + 1) % k]
            if cmp.gt(dist(a, v) + dist(v, b), dist(a, b)):
                return False, v
    return True, None


def realize_cactus(m: FiniteMetric) -> RealizationResult:
    """Decide whether m is a cactus metric; if so build its unique optimal
    realization, with a certificate, otherwise report why not.

    The metric is decomposed into block components; every component of four
    or more points must admit an optimal cycle realization, two-point
    components become single edges.  The pieces are glued at the shared cut
    points, virtual points become unlabeled vertices, and unlabeled
    degree-two vertices are suppressed.  The result is accepted only if it
    reproduces the metric, every cycle is slack-free, and the X-cactus
    invariants hold.
    """
    tree = decompose(m)
    cycles = tree.leaf_cycle_map()

    def reject(rejection):
        return RealizationResult(False, None, None, rejection, tree)

    parts = []
    for idx, leaf in enumerate(tree.leaves):
        if leaf.n == 2:
            parts.append(edge_graph(leaf.labels[0], leaf.labels[1],
                                    leaf.rows[0][1]))
            continue
        if leaf.n == 3:
            # cannot happen for a valid metric; float-mode tolerance slips land here
            return reject(Rejection("leaf_size_three", leaf.labels))
        cyc = cycles.get(idx)
        if cyc is None:
            cyc = recognize_optimal_cycle(leaf)
        if isinstance(cyc, NotCyclelike):
            return reject(Rejection("leaf_not_cyclelike", leaf.labels,
                                    cyc.reason, cyc.witnesses))
        parts.append(cyc.as_graph())

    g = glue(parts) if len(parts) > 1 else parts[0]
    g = strip_synthetic_labels(g)
    g = suppress_unlabeled_degree2(g)

    eq = verify_realization(g, m)
    slack_free, slack_witness = _cycles_slack_free(g, m.cmp)
    invariants = is_x_cactus(g, m.labels)
    cert = Certificate(eq, slack_free, invariants)
    if not cert.passed:
        witnesses = (slack_witness,) if slack_witness is not None else ()
        return RealizationResult(
            False, None, cert,
            Rejection("certificate", None,
                      reason=",".join(k for k, v in cert.as_dict().items() if not v),
                      witnesses=witnesses),
            tree)
    return RealizationResult(True, XCactus(g, frozenset(m.labels)), cert,
                             None, tree)


@dataclass(frozen=True)
class CompactificationStep:
    """One slack-vertex rewrite: the two cycle edges at ``pivot`` are
    replaced by a three-edge star on a new vertex with the given weights."""

    pivot: int
    deltas: tuple[Value, Value, Value]
    new_vertex: int
    weight_before: Value
    weight_after: Value


def compactify_trace(g: WeightedGraph, x_labels,
                     cmp: Comparator = EXACT,
                     check: bool = True):
    """Compactify with a per-step trace; see :func:`compactify`."""
    xset = frozenset(x_labels)
    if check:
        if not is_x_cactus(g, xset):
            raise PreconditionError("input is not an X-cactus")
        if any(b.is_cycle and len(b.vertices) < 4 for b in blocks(g).blocks):
            raise PreconditionError(
                "cycles of three vertices must be normalized away first")
        if not is_minimal_realization(g, induced_metric(g, sorted(xset), cmp)):
            raise PreconditionError("input is not a minimal realization")

    steps: list[CompactificationStep] = []
    while True:
        adj = g.adjacency()
        dist_cache: dict[int, dict[int, Value]] = {}

        def dist(u, v):
            if u not in dist_cache:
                dist_cache[u] = shortest_paths_from(adj, u)
            return dist_cache[u][v]

        pivot = None
        for _, order in _cycle_blocks_with_order(g):
            k = len(order)
            for i in range(k):
                a, v, b = order[(i - 1) % k], order[i], order[(i + 1) % k]
                if cmp.gt(dist(a, v) + dist(v, b), dist(a, b)):
                    if pivot is None or v < pivot[0]:
                        pivot = (v, a, b)
        if pivot is None:
            break
        v, a, b = pivot
        dav, dvb, dab = dist(a, v), dist(v, b), dist(a, b)
        delta_a = (dav + dab - dvb) / 2
        delta_v = (dav + dvb - dab) / 2
        delta_b = (dvb + dab - dav) / 2
        new_id = max(g.vertices) + 1
        before = total_weight(g)

        labels = g.label_map()
        edges = [e for e in g.edges
                 if set(e[:2]) not in ({a, v}, {v, b})]
        # a zero outer delta means the new vertex coincides with that
        # neighbor, so the zero edge is contracted immediately
        if cmp.is_zero(delta_a):
            center = a
        elif cmp.is_zero(delta_b):
            center = b
        else:
            center = new_id
        vertices_out = list(g.vertices) + ([new_id] if center == new_id else [])
        for other, dw in ((a, delta_a), (v, delta_v), (b, delta_b)):
            if other == center:
                continue
            u1, u2 = (center, other) if center < other else (other, center)
            edges.append((u1, u2, dw))
        g = make_graph(((x, labels.get(x)) for x in vertices_out),
                       edges, check=False)
        g = suppress_unlabeled_degree2(g)
        after = total_weight(g)
        steps.append(CompactificationStep(v, (delta_a, delta_v, delta_b),
                                          new_id if center == new_id else center,
                                          before, after))
        if not cmp.lt(after, before):
            raise PreconditionError(
                "compactification failed to reduce total weight; "
                "input was not a minimal realization")
    return XCactus(g, xset), tuple(steps)


def compactify(g: WeightedGraph, x_labels, cmp: Comparator = EXACT,
               check: bool = True) -> XCactus:
    """Rewrite a minimal X-cactus realization into the optimal one.

    Repeatedly picks the slack cycle vertex with the smallest id (slack is
    measured in the full graph metric), replaces its two cycle edges by a
    three-edge star whose weights are the three Gromov products, contracts
    zero-weight edges, and suppresses unlabeled degree-2 vertices.  Every
    step strictly reduces total weight; the loop ends with no slack vertex,
    i.e. at the unique optimal realization of the induced metric.
    """
    out, _ = compactify_trace(g, x_labels, cmp, check)
    return out


def classify_metric(m: FiniteMetric) -> MetricKind:
    """TreeMetric, Cyclelike (one cycle covering all of X), CactusGeneral,
    or NotCactus."""
    return realize_cactus(m).kind()


def optimal_weight(m: FiniteMetric) -> Value:
    """Total edge weight of the unique optimal realization of a cactus
    metric."""
    res = realize_cactus(m)
    if not res.realized:
        raise NotCactusMetricError(res.rejection)
    return total_weight(res.cactus.graph)

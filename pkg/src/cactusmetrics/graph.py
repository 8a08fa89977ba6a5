"""Weighted graphs, shortest-path metrics, block structure, cactus
predicates, and the local rewrites (suppression, triangle replacement,
gluing) used when assembling and normalizing realizations.

Graphs are value types: every operation returns a new graph.  Vertex ids
are stable ints; labels are a partial map kept separate from the ids.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    ConflictingEdgeError,
    DisconnectedGraphError,
    DisconnectedUnionError,
    InvalidGraphError,
    MultiEdgeConflictError,
    PreconditionError,
    UnknownLabelError,
)
from .metric import SYNTHETIC_PREFIX, FiniteMetric
from .values import EXACT, Comparator, Value, coerce_value

Edge = tuple[int, int, Value]


@dataclass(frozen=True)
class WeightedGraph:
    """Simple connected graph with strictly positive edge weights.

    ``labels`` maps a subset of vertices to distinct names.  Edges are
    normalized to ``u < v`` and stored sorted, so equal graphs compare equal.
    """

    vertices: tuple[int, ...]
    labels: tuple[tuple[int, str], ...]
    edges: tuple[Edge, ...]

    def label_map(self) -> dict[int, str]:
        return dict(self.labels)

    def vertex_of(self, label: str) -> int:
        for v, lab in self.labels:
            if lab == label:
                return v
        raise UnknownLabelError(label)

    def label_set(self) -> tuple[str, ...]:
        return tuple(lab for _, lab in self.labels)

    def adjacency(self) -> dict[int, list[tuple[int, Value]]]:
        adj: dict[int, list[tuple[int, Value]]] = {v: [] for v in self.vertices}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for v in adj:
            adj[v].sort(key=lambda t: t[0])
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if a == v or b == v)


def make_graph(vertices: Iterable[tuple[int, Optional[str]]],
               edges: Iterable[tuple[int, int, object]],
               exact: bool = True,
               check: bool = True) -> WeightedGraph:
    """Build and (by default) validate a graph.

    ``vertices`` is an iterable of (id, label-or-None) pairs.  Weights are
    coerced into the requested numeric mode.
    """
    vs = []
    labels = []
    for vid, lab in vertices:
        vs.append(int(vid))
        if lab is not None:
            labels.append((int(vid), str(lab)))
    norm_edges = []
    for u, v, w in edges:
        u, v = int(u), int(v)
        if u > v:
            u, v = v, u
        norm_edges.append((u, v, coerce_value(w, exact)))
    g = WeightedGraph(tuple(sorted(vs)), tuple(sorted(labels)),
                      tuple(sorted(norm_edges, key=lambda e: (e[0], e[1]))))
    if check:
        validate_graph(g)
    return g


def validate_graph(g: WeightedGraph) -> None:
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        raise InvalidGraphError("duplicate vertex id")
    if len(vset) < 1:
        raise InvalidGraphError("empty graph")
    seen_labels = set()
    for v, lab in g.labels:
        if v not in vset:
            raise InvalidGraphError(f"label on unknown vertex {v}")
        if lab in seen_labels:
            raise InvalidGraphError(f"duplicate label {lab!r}")
        seen_labels.add(lab)
    seen_pairs = set()
    for u, v, w in g.edges:
        if u == v:
            raise InvalidGraphError(f"loop at vertex {u}")
        if u not in vset or v not in vset:
            raise InvalidGraphError(f"edge on unknown vertex {u}-{v}")
        if (u, v) in seen_pairs:
            raise InvalidGraphError(f"parallel edge {u}-{v}")
        seen_pairs.add((u, v))
        if not w > 0:
            raise InvalidGraphError(f"nonpositive weight on {u}-{v}")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def is_connected(g: WeightedGraph) -> bool:
    if not g.vertices:
        return False
    adj = g.adjacency()
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        v = stack.pop()
        for u, _ in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(g.vertices)


def total_weight(g: WeightedGraph) -> Value:
    return sum(w for _, _, w in g.edges)


def shortest_paths_from(adj, source: int) -> dict[int, Value]:
    """Dijkstra distances from one vertex (weights are exact or float)."""
    dist = {source: 0}
    heap = [(0, source)]
    done = set()
    while heap:
        dv, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for u, w in adj[v]:
            nd = dv + w
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def induced_metric(g: WeightedGraph, on: Optional[Sequence[str]] = None,
                   cmp: Comparator = EXACT) -> FiniteMetric:
    """All-pairs shortest-path metric restricted to the requested labels.

    With ``on=None`` every labeled vertex is used, in sorted label order.
    Satisfies the metric axioms by construction, so no revalidation happens.
    """
    label_map = g.label_map()
    by_label = {lab: v for v, lab in label_map.items()}
    if on is None:
        on = sorted(by_label)
    on = tuple(on)
    verts = []
    for lab in on:
        if lab not in by_label:
            raise UnknownLabelError(lab)
        verts.append(by_label[lab])
    adj = g.adjacency()
    rows = []
    for v in verts:
        dist = shortest_paths_from(adj, v)
        if len(dist) != len(g.vertices):
            raise DisconnectedGraphError("graph is not connected")
        rows.append(tuple(dist[u] for u in verts))
    return FiniteMetric(on, tuple(rows), cmp)


# ---------------------------------------------------------------------------
# Block structure


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def is_cycle(self) -> bool:
        return len(self.edges) > 1 and len(self.edges) == len(self.vertices)

    @property
    def is_edge(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class BlockStructure:
    blocks: tuple[Block, ...]
    cut_vertices: tuple[int, ...]
    # (cut vertex, block index) pairs, sorted
    block_cut_incidence: tuple[tuple[int, int], ...]


def blocks(g: WeightedGraph) -> BlockStructure:
    """Biconnected components via an iterative depth-first search.

    Cut vertices are exactly the vertices lying in two or more blocks; every
    edge lands in exactly one block.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for idx, (u, v, _) in enumerate(g.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    for v in adj:
        adj[v].sort()

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    edge_stack: list[int] = []
    raw_blocks: list[list[int]] = []
    cut: set[int] = set()

    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack: list[list] = [[root, -1, 0]]  # vertex, entering edge idx, adj ptr
        while stack:
            frame = stack[-1]
            v, pe, ptr = frame
            if ptr < len(adj[v]):
                frame[2] += 1
                u, ei = adj[v][ptr]
                if ei == pe:
                    continue
                if u not in disc:
                    disc[u] = low[u] = timer
                    timer += 1
                    edge_stack.append(ei)
                    stack.append([u, ei, 0])
                elif disc[u] < disc[v]:
                    edge_stack.append(ei)
                    if disc[u] < low[v]:
                        low[v] = disc[u]
                continue
            stack.pop()
            if not stack:
                continue
            parent = stack[-1][0]
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                blk = []
                while True:
                    ei = edge_stack.pop()
                    blk.append(ei)
                    if ei == pe:
                        break
                raw_blocks.append(blk)
                if parent == root:
                    root_children += 1
                else:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)

    out_blocks = []
    for blk in raw_blocks:
        es = tuple(sorted(g.edges[i] for i in sorted(blk)))
        vs = tuple(sorted({x for u, v, _ in es for x in (u, v)}))
        out_blocks.append(Block(vs, es))
    out_blocks.sort(key=lambda b: b.edges[0][:2])

    incidence = []
    for bi, b in enumerate(out_blocks):
        for v in b.vertices:
            if v in cut:
                incidence.append((v, bi))
    return BlockStructure(tuple(out_blocks), tuple(sorted(cut)),
                          tuple(sorted(incidence)))


def is_cactus(g: WeightedGraph) -> bool:
    """True when every block is a single edge or a chordless cycle on the
    block's full vertex set (each edge lies on at most one cycle)."""
    for b in blocks(g).blocks:
        if b.is_edge:
            continue
        if len(b.edges) != len(b.vertices):
            return False
        deg = {v: 0 for v in b.vertices}
        for u, v, _ in b.edges:
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg.values()):
            return False
    return True


def cycle_count(g: WeightedGraph) -> int:
    # connected graph: independent cycles = |E| - |V| + 1
    return len(g.edges) - len(g.vertices) + 1


def is_x_cactus(g: WeightedGraph, x_labels: Iterable[str]) -> bool:
    """Cactus check plus the labeling rules: every vertex of degree <= 2
    carries a label from X, and the cycle count is at most |X| - 2."""
    xset = set(x_labels)
    if not is_cactus(g):
        return False
    label_map = g.label_map()
    deg = {v: 0 for v in g.vertices}
    for u, v, _ in g.edges:
        deg[u] += 1
        deg[v] += 1
    for v in g.vertices:
        if deg[v] <= 2 and label_map.get(v) not in xset:
            return False
    return cycle_count(g) <= len(xset) - 2 or cycle_count(g) == 0


@dataclass(frozen=True)
class XCactus:
    """A cactus realization together with its point set X."""

    graph: WeightedGraph
    x_labels: frozenset[str]

    def validate(self) -> None:
        validate_graph(self.graph)
        if not is_x_cactus(self.graph, self.x_labels):
            raise InvalidGraphError("graph is not an X-cactus for the given X")

    @property
    def n_cycles(self) -> int:
        return cycle_count(self.graph)


# ---------------------------------------------------------------------------
# Local rewrites


def suppress_unlabeled_degree2(g: WeightedGraph) -> WeightedGraph:
    """Remove unlabeled degree-2 vertices, merging their two edges.

    The induced metric on labeled vertices is unchanged.  If a merge would
    duplicate an existing edge the input was not a minimal realization and
    the conflict is reported instead of silently resolved.
    """
    labels = g.label_map()
    weights: dict[tuple[int, int], Value] = {(u, v): w for u, v, w in g.edges}
    nbrs: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v, _ in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def wkey(a, b):
        return (a, b) if a < b else (b, a)

    while True:
        target = None
        for v in sorted(nbrs):
            if v not in labels and len(nbrs[v]) == 2:
                target = v
                break
        if target is None:
            break
        a, b = sorted(nbrs[target])
        w = weights.pop(wkey(target, a)) + weights.pop(wkey(target, b))
        if wkey(a, b) in weights:
            raise MultiEdgeConflictError(a, b)
        weights[wkey(a, b)] = w
        nbrs[a].discard(target)
        nbrs[b].discard(target)
        nbrs[a].add(b)
        nbrs[b].add(a)
        del nbrs[target]

    return make_graph(((v, labels.get(v)) for v in sorted(nbrs)),
                      ((u, v, w) for (u, v), w in weights.items()),
                      check=False)


def normalize_triangles(g: WeightedGraph, cmp: Comparator = EXACT) -> WeightedGraph:
    """Replace every 3-cycle block by a metric-equivalent tree.

    A triangle whose edges are all geodesics becomes a star with arm weights
    equal to the Gromov products of the three pairwise distances (a zero arm
    contracts the center onto that corner).  A triangle with a non-geodesic
    edge, which cannot be part of a minimal realization, loses that edge.
    The induced metric on labeled vertices is preserved and the result has
    no 3-cycles.
    """
    bs = blocks(g)
    tri = [b for b in bs.blocks if b.is_cycle and len(b.vertices) == 3]
    if not tri:
        return g
    labels = g.label_map()
    edge_set = {(u, v): w for u, v, w in g.edges}
    next_id = max(g.vertices) + 1
    new_vertices = list(g.vertices)

    for b in tri:
        u, v, w = b.vertices
        wuv = edge_set[(u, v)]
        wuw = edge_set[(u, w)]
        wvw = edge_set[(v, w)]
        # within a cactus the only alternative route between two triangle
        # corners is the other two triangle edges
        heavy = None
        if cmp.gt(wuv, wuw + wvw):
            heavy = (u, v)
        elif cmp.gt(wuw, wuv + wvw):
            heavy = (u, w)
        elif cmp.gt(wvw, wuv + wuw):
            heavy = (v, w)
        if heavy is not None:
            del edge_set[heavy]
            continue
        duv = min(wuv, wuw + wvw)
        duw = min(wuw, wuv + wvw)
        dvw = min(wvw, wuv + wuw)
        arm = {
            u: (duv + duw - dvw) / 2,
            v: (duv + dvw - duw) / 2,
            w: (duw + dvw - duv) / 2,
        }
        for pair in ((u, v), (u, w), (v, w)):
            del edge_set[pair]
        zero_corner = next((c for c in (u, v, w) if cmp.is_zero(arm[c])), None)
        if zero_corner is not None:
            center = zero_corner
        else:
            center = next_id
            next_id += 1
            new_vertices.append(center)
        for c in (u, v, w):
            if c == center:
                continue
            a, bb = (center, c) if center < c else (c, center)
            edge_set[(a, bb)] = arm[c]

    out = make_graph(((x, labels.get(x)) for x in sorted(new_vertices)),
                     ((a, b, wt) for (a, b), wt in edge_set.items()),
                     check=False)
    return suppress_unlabeled_degree2(out)


def glue(parts: Sequence[WeightedGraph]) -> WeightedGraph:
    """Disjoint union with vertices of equal label identified.

    Parts may only share vertices through labels; the union must come out
    connected.  The same labeled edge contributed twice with different
    weights is a conflict.
    """
    if not parts:
        raise DisconnectedUnionError("nothing to glue")
    next_id = 0
    by_label: dict[str, int] = {}
    vertex_label: dict[int, Optional[str]] = {}
    weights: dict[tuple[int, int], Value] = {}
    for part in parts:
        mapping: dict[int, int] = {}
        lm = part.label_map()
        for v in part.vertices:
            lab = lm.get(v)
            if lab is not None and lab in by_label:
                mapping[v] = by_label[lab]
            else:
                mapping[v] = next_id
                vertex_label[next_id] = lab
                if lab is not None:
                    by_label[lab] = next_id
                next_id += 1
        for u, v, w in part.edges:
            a, b = mapping[u], mapping[v]
            if a > b:
                a, b = b, a
            if (a, b) in weights:
                if weights[(a, b)] != w:
                    raise ConflictingEdgeError(
                        f"edge {vertex_label.get(a)}-{vertex_label.get(b)} "
                        f"glued with weights {weights[(a, b)]} and {w}")
            else:
                weights[(a, b)] = w
    g = make_graph(((v, vertex_label[v]) for v in sorted(vertex_label)),
                   ((u, v, w) for (u, v), w in weights.items()),
                   check=False)
    if not is_connected(g):
        raise DisconnectedUnionError("glued parts are not connected")
    validate_graph(g)
    return g


def strip_synthetic_labels(g: WeightedGraph) -> WeightedGraph:
    """Drop labels carrying the reserved synthetic prefix (the vertices stay)."""
    keep = tuple((v, lab) for v, lab in g.labels
                 if not lab.startswith(SYNTHETIC_PREFIX))
    return WeightedGraph(g.vertices, keep, g.edges)


def cycle_graph(order: Sequence[str], weights: Sequence[Value]) -> WeightedGraph:
    """Cycle through the given labels; weights[i] joins order[i] to order[i+1]."""
    m = len(order)
    edges = [(i, (i + 1) % m, weights[i]) for i in range(m)]
    return make_graph(((i, order[i]) for i in range(m)), edges, check=False)


def edge_graph(a: str, b: str, w: Value) -> WeightedGraph:
    return make_graph([(0, a), (1, b)], [(0, 1, w)], check=False)


# ---------------------------------------------------------------------------
# Realization checks


def verify_realization(g: WeightedGraph, m: FiniteMetric) -> bool:
    """True when shortest paths in g reproduce m on m's labels exactly
    (under m's comparator)."""
    induced = induced_metric(g, m.labels, m.cmp)
    cmp = m.cmp
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if cmp.ne(induced.rows[i][j], m.rows[i][j]):
                return False
    return True


def is_minimal_realization(g: WeightedGraph, m: FiniteMetric) -> bool:
    """True when no single edge can be deleted without breaking the
    realization (deleting it either disconnects g or changes some distance)."""
    if not verify_realization(g, m):
        raise PreconditionError("graph does not realize the metric")
    for i in range(len(g.edges)):
        reduced = WeightedGraph(g.vertices, g.labels,
                                g.edges[:i] + g.edges[i + 1:])
        if not is_connected(reduced):
            continue
        if verify_realization(reduced, m):
            return False
    return True


def labeled_isomorphic(g1: WeightedGraph, g2: WeightedGraph,
                       cmp: Comparator = EXACT) -> bool:
    """Label- and weight-preserving isomorphism test.

    Labeled vertices must map by label; unlabeled vertices may map to any
    unlabeled vertex.  Backtracking anchored at the labeled vertices; meant
    for desk-scale graphs.
    """
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    lm1, lm2 = g1.label_map(), g2.label_map()
    if sorted(lm1.values()) != sorted(lm2.values()):
        return False
    by_label2 = {lab: v for v, lab in lm2.items()}

    adj1: dict[int, dict[int, Value]] = {v: {} for v in g1.vertices}
    for u, v, w in g1.edges:
        adj1[u][v] = w
        adj1[v][u] = w
    adj2: dict[int, dict[int, Value]] = {v: {} for v in g2.vertices}
    for u, v, w in g2.edges:
        adj2[u][v] = w
        adj2[v][u] = w

    def signature(adjm, v):
        return tuple(sorted(adjm[v].values()))

    mapping: dict[int, int] = {}
    used: set[int] = set()
    for v, lab in lm1.items():
        mapping[v] = by_label2[lab]
        used.add(by_label2[lab])

    def consistent(a, b):
        if len(adj1[a]) != len(adj2[b]):
            return False
        if signature(adj1, a) != signature(adj2, b):
            return False
        for nb, w in adj1[a].items():
            if nb in mapping:
                img = mapping[nb]
                if img not in adj2[b] or not cmp.eq(adj2[b][img], w):
                    return False
        return True

    for a, b in list(mapping.items()):
        if not consistent(a, b):
            return False

    free1 = sorted((v for v in g1.vertices if v not in mapping),
                   key=lambda v: (-len(adj1[v]), v))
    free2 = [v for v in g2.vertices if v not in used]

    def backtrack(k: int) -> bool:
        if k == len(free1):
            return True
        a = free1[k]
        for b in free2:
            if b in used:
                continue
            mapping[a] = b
            used.add(b)
            if consistent(a, b) and backtrack(k + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return backtrack(0)

"""Cyclelike metrics: slack vertices, the optimal-cycle criterion, and the
four-step recognition algorithm that either produces the unique optimal
cycle realization of a metric or reports why none exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import PropertyViolationError, TooFewPointsError, UnknownLabelError
from .graph import WeightedGraph, cycle_graph
from .metric import FiniteMetric, closest_pair
from .values import Value


@dataclass(frozen=True)
class CyclicOrder:
    """An edge-weighted cycle on labeled vertices.

    ``weights[i]`` is the weight of the edge joining ``order[i]`` and
    ``order[(i + 1) % m]``.  Rotations and reflections of the same cycle are
    equivalent; compare through :func:`canonical_cycle`.
    """

    order: tuple[str, ...]
    weights: tuple[Value, ...]

    def __post_init__(self):
        if len(self.order) < 4:
            raise TooFewPointsError("a cycle realization needs at least 4 points")
        if len(self.weights) != len(self.order):
            raise ValueError("need one weight per edge")

    @property
    def m(self) -> int:
        return len(self.order)

    def as_graph(self) -> WeightedGraph:
        return cycle_graph(self.order, self.weights)

    def total_weight(self) -> Value:
        return sum(self.weights)


def canonical_cycle(order) -> tuple[str, ...]:
    """Canonical representative of a cyclic order modulo rotation and
    reflection (lexicographically smallest)."""
    seq = tuple(order)
    m = len(seq)
    best = None
    for start in range(m):
        for step in (1, -1):
            cand = tuple(seq[(start + step * k) % m] for k in range(m))
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class NotCyclelike:
    """Structured rejection from cycle recognition.

    ``reason`` is one of ``no_candidate``, ``ambiguous_candidate``,
    ``fails_realization``, ``slack_vertex``; ``step`` is the extension step
    where construction stopped, ``witnesses`` the labels involved.
    """

    reason: str
    step: Optional[int] = None
    witnesses: tuple = ()


def _check_cycle_labels(c: CyclicOrder, m: FiniteMetric) -> list[int]:
    if set(c.order) != set(m.labels):
        for lab in c.order:
            if not m.has_label(lab):
                raise UnknownLabelError(lab)
        raise UnknownLabelError(next(l for l in m.labels if l not in set(c.order)))
    return [m.index(lab) for lab in c.order]


def slack_vertices(c: CyclicOrder, m: FiniteMetric) -> tuple[str, ...]:
    """Cycle vertices v with d(prev, v) + d(v, next) > d(prev, next),
    measured in the metric (indices cyclic)."""
    idx = _check_cycle_labels(c, m)
    n = len(idx)
    rows = m.rows
    cmp = m.cmp
    out = []
    for i in range(n):
        a, v, b = idx[(i - 1) % n], idx[i], idx[(i + 1) % n]
        if cmp.gt(rows[a][v] + rows[v][b], rows[a][b]):
            out.append(c.order[i])
    return tuple(out)


def _cycle_realizes(c: CyclicOrder, m: FiniteMetric):
    """Compare the cycle's shortest-path distances with m.

    Returns None when they agree, otherwise a witness label pair.
    """
    idx = _check_cycle_labels(c, m)
    n = len(idx)
    pref = [0]
    for w in c.weights:
        pref.append(pref[-1] + w)
    total = pref[n]
    cmp = m.cmp
    for i in range(n):
        for j in range(i + 1, n):
            arc = pref[j] - pref[i]
            dist = arc if arc <= total - arc else total - arc
            if cmp.ne(dist, m.rows[idx[i]][idx[j]]):
                return (c.order[i], c.order[j])
    return None


def is_optimal_cycle(c: CyclicOrder, m: FiniteMetric) -> bool:
    """True when the cycle realizes m and has no slack vertex, i.e. it is
    the unique optimal realization of m."""
    if m.n < 4:
        raise TooFewPointsError("optimal-cycle check needs at least 4 points")
    if _cycle_realizes(c, m) is not None:
        return False
    return not slack_vertices(c, m)


def recognize_optimal_cycle(m: FiniteMetric) -> Union[CyclicOrder, NotCyclelike]:
    """Determine whether m has an optimal realization that is a cycle and,
    if so, construct it.

    Step 1 seeds a path with a closest pair.  Step 2 repeatedly extends the
    path: among the unused points x satisfying the betweenness equality
    d(v[j-2], v[j-1]) + d(v[j-1], x) = d(v[j-2], x), the next vertex must be
    the unique minimizer of d(v[j-1], x).  Step 3 closes the cycle.  Step 4
    accepts only if the weighted cycle realizes m and has no slack vertex
    (a realizing slack-free cycle is optimal, hence minimal).
    """
    n = m.n
    if n < 4:
        raise TooFewPointsError("cycle recognition needs at least 4 points")
    cmp = m.cmp
    rows = m.rows
    a, b = closest_pair(m)
    seq = [m.index(a), m.index(b)]
    unused = [i for i in range(n) if i not in seq]
    for j in range(2, n):
        p2, p1 = seq[j - 2], seq[j - 1]
        base = rows[p2][p1]
        cands = [x for x in unused if cmp.eq(base + rows[p1][x], rows[p2][x])]
        if not cands:
            return NotCyclelike("no_candidate", step=j)
        best = min(rows[p1][x] for x in cands)
        winners = [x for x in cands if cmp.eq(rows[p1][x], best)]
        if len(winners) > 1:
            return NotCyclelike("ambiguous_candidate", step=j,
                                witnesses=tuple(m.labels[x] for x in winners))
        seq.append(winners[0])
        unused.remove(winners[0])
    weights = tuple(rows[seq[i]][seq[(i + 1) % n]] for i in range(n))
    cycle = CyclicOrder(tuple(m.labels[i] for i in seq), weights)
    witness = _cycle_realizes(cycle, m)
    if witness is not None:
        return NotCyclelike("fails_realization", witnesses=witness)
    slack = slack_vertices(cycle, m)
    if slack:
        return NotCyclelike("slack_vertex", witnesses=(slack[0],))
    return cycle


@dataclass(frozen=True)
class SlackReport:
    slack: tuple[str, ...]
    count: int
    adjacent: Optional[bool]  # meaningful only when count == 2


def slack_structure_check(c: CyclicOrder, m: FiniteMetric) -> SlackReport:
    """Count slack vertices of a minimal cycle realization.

    A minimal realization admits at most two, and two only when adjacent;
    anything else means the precondition was violated or there is a bug,
    and raises PropertyViolationError.
    """
    slack = slack_vertices(c, m)
    count = len(slack)
    adjacent = None
    if count == 2:
        i, j = (c.order.index(s) for s in slack)
        adjacent = abs(i - j) in (1, len(c.order) - 1)
    if count > 2 or (count == 2 and not adjacent):
        raise PropertyViolationError(
            f"slack structure violated: count={count}, adjacent={adjacent}, "
            f"slack={slack}")
    return SlackReport(slack, count, adjacent)

"""Split a finite metric into block components joined at cut points.

A cut point is either a labeled point through which all cross-group
geodesics pass, or a virtual point: a consistent Steiner point whose
distance vector to every label extends the metric and splits the labels
into two or more groups whose cross distances add through it.  Components
are peeled off recursively until no cut point remains; leaves are the
block metrics the realization pipeline handles one by one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .cycles import CyclicOrder, NotCyclelike, recognize_optimal_cycle
from .errors import InconsistentCutError, MetricAxiomError, TooFewPointsError
from .metric import SYNTHETIC_PREFIX, FiniteMetric, restrict
from .values import Value


@dataclass(frozen=True)
class CutPoint:
    """A decomposition point: labeled, or virtual with its distance vector.

    For a virtual point ``f`` lists (label, distance) pairs over the metric
    it was found in; the extension of the metric by ``f`` satisfies all
    metric axioms.
    """

    label: str
    f: Optional[tuple[tuple[str, Value], ...]] = None

    @property
    def is_virtual(self) -> bool:
        return self.f is not None

    def f_map(self) -> dict[str, Value]:
        return dict(self.f or ())


@dataclass(frozen=True)
class DecompositionTree:
    """Flattened record of a full decomposition.

    Leaves keep their attached cut-point labels; ``incidence`` lists which
    leaves contain which cut labels.  ``leaf_cycles`` carries the optimal
    cycles certified for leaves that were recognized as cyclelike during
    decomposition, so the pipeline does not re-derive them.
    """

    leaves: tuple[FiniteMetric, ...]
    cut_points: tuple[CutPoint, ...]
    incidence: tuple[tuple[int, str], ...]
    k: int
    leaf_cycles: tuple[tuple[int, CyclicOrder], ...] = ()

    def leaf_cycle_map(self) -> dict[int, CyclicOrder]:
        return dict(self.leaf_cycles)


class _UnionFind:
    __slots__ = ("parent", "groups")

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.groups = len(self.parent)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.groups -= 1
        return True


def find_labeled_cut_vertex(m: FiniteMetric):
    """First label (in label order) through which all cross-group geodesics
    pass, together with the groups.

    For each candidate c the separation graph on the remaining labels has an
    edge {x, y} iff d(x,y) < d(x,c) + d(c,y); c is a cut point exactly when
    that graph is disconnected, and its connected components are the groups.
    Returns None when every candidate's separation graph is connected.
    """
    n = m.n
    if n < 3:
        raise TooFewPointsError("cut-vertex search needs at least 3 points")
    rows = m.rows
    cmp = m.cmp
    for ci in range(n):
        others = [i for i in range(n) if i != ci]
        uf = _UnionFind(others)
        rc = rows[ci]
        connected = False
        for a_pos, i in enumerate(others):
            ri = rows[i]
            ric = rc[i]
            for j in others[a_pos + 1:]:
                if cmp.lt(ri[j], ric + rc[j]):
                    uf.union(i, j)
                    if uf.groups == 1:
                        connected = True
                        break
            if connected:
                break
        if connected:
            continue
        groups: dict[int, list[int]] = {}
        for i in others:
            groups.setdefault(uf.find(i), []).append(i)
        comps = sorted(groups.values(), key=lambda g: g[0])
        return m.labels[ci], tuple(tuple(m.labels[i] for i in g) for g in comps)
    return None


def find_virtual_cut_point(m: FiniteMetric,
                           name: str = SYNTHETIC_PREFIX + "1") -> Optional[CutPoint]:
    """Search for an unlabeled cut point of the metric.

    Only call this after :func:`find_labeled_cut_vertex` came up empty.
    Candidates are generated from label triples (a, b, c) whose three
    pairwise Gromov products are strictly positive; the products are the
    hypothesized distances from a, b, c to the Steiner point of the triple.
    Every other label w sits at distance
        f(w) = max(d(w,a) - f(a), d(w,b) - f(b), d(w,c) - f(c))
    from that point (the maximum is attained by any anchor on the far side
    of the cut).  A candidate is accepted when the extension by f satisfies
    the metric axioms and the separation graph with edges
    {u, v : d(u,v) < f(u) + f(v)} is disconnected, which certifies a valid
    1-sum split.  The first accepted candidate in scan order is returned;
    None when none is accepted.

    Raises InconsistentCutError when an otherwise-accepted candidate puts a
    label at distance zero from the cut point: that label would be a labeled
    cut vertex, contradicting the caller's guarantee.
    """
    n = m.n
    if n < 3:
        raise TooFewPointsError("cut-point search needs at least 3 points")
    rows = m.rows
    cmp = m.cmp
    f = [None] * n
    for a, b, c in itertools.combinations(range(n), 3):
        ra, rb, rc = rows[a], rows[b], rows[c]
        ta = ra[b] + ra[c] - rb[c]
        if not cmp.is_positive(ta):
            continue
        tb = ra[b] + rb[c] - ra[c]
        if not cmp.is_positive(tb):
            continue
        tc = ra[c] + rb[c] - ra[b]
        if not cmp.is_positive(tc):
            continue
        fa, fb, fc = ta / 2, tb / 2, tc / 2
        f[a], f[b], f[c] = fa, fb, fc
        ok = True
        for w in range(n):
            if w == a or w == b or w == c:
                continue
            fw = max(rows[w][a] - fa, rows[w][b] - fb, rows[w][c] - fc)
            if cmp.lt(fw, 0):
                ok = False
                break
            f[w] = fw
        if not ok:
            continue
        # extension axioms and separation in one pass; once the separation
        # graph is connected the candidate is dead, so exit early (skipping
        # the remaining axiom checks is fine: either way it is rejected)
        uf = _UnionFind(range(n))
        valid = True
        for u in range(n):
            ru = rows[u]
            fu = f[u]
            for v in range(u + 1, n):
                duv = ru[v]
                s = fu + f[v]
                if cmp.gt(duv, s) or cmp.gt(abs(fu - f[v]), duv):
                    valid = False
                    break
                if cmp.lt(duv, s) and uf.union(u, v) and uf.groups == 1:
                    valid = False
                    break
            if not valid:
                break
        if not valid or uf.groups == 1:
            continue
        zero = next((w for w in range(n) if cmp.is_zero(f[w])), None)
        if zero is not None:
            raise InconsistentCutError(
                f"candidate cut point coincides with label "
                f"{m.labels[zero]!r}; a labeled cut vertex was missed")
        return CutPoint(name, tuple(zip(m.labels, tuple(f))))
    return None


def adjoin_point(m: FiniteMetric, cut: CutPoint) -> FiniteMetric:
    """Extend the metric by a virtual cut point, making it an ordinary
    labeled point for further decomposition.  Re-checks the new triangles
    defensively."""
    if not cut.is_virtual:
        raise ValueError("only virtual cut points can be adjoined")
    fmap = cut.f_map()
    f = [fmap[lab] for lab in m.labels]
    cmp = m.cmp
    n = m.n
    for i in range(n):
        if not cmp.is_positive(f[i]):
            raise MetricAxiomError("zero_off_diagonal", (m.labels[i], cut.label))
        for j in range(i + 1, n):
            if cmp.gt(abs(f[i] - f[j]), m.rows[i][j]) or \
                    cmp.gt(m.rows[i][j], f[i] + f[j]):
                raise MetricAxiomError(
                    "triangle_violation", (m.labels[i], m.labels[j], cut.label))
    labels = m.labels + (cut.label,)
    rows = tuple(m.rows[i] + (f[i],) for i in range(n)) + (tuple(f) + (0,),)
    return FiniteMetric(labels, rows, cmp)


def decompose(m: FiniteMetric,
              short_circuit_cycles: bool = True) -> DecompositionTree:
    """Full recursive decomposition of a metric into block components.

    Each component is handled in order: a certified optimal cycle (when
    ``short_circuit_cycles``) becomes a leaf immediately; otherwise a
    labeled cut vertex splits it; otherwise a virtual cut point is adjoined
    (the next round splits at it); otherwise it is a leaf.  Deterministic:
    components are processed depth-first in separation-group order, and
    virtual points are named "~1", "~2", ... in discovery order.
    """
    leaves: list[FiniteMetric] = []
    cuts: dict[str, CutPoint] = {}
    leaf_cycles: list[tuple[int, CyclicOrder]] = []
    counter = itertools.count(1)
    work = [m]
    while work:
        mm = work.pop()
        if mm.n == 2:
            leaves.append(mm)
            continue
        if short_circuit_cycles and mm.n >= 4:
            got = recognize_optimal_cycle(mm)
            if isinstance(got, CyclicOrder):
                leaf_cycles.append((len(leaves), got))
                leaves.append(mm)
                continue
        hit = find_labeled_cut_vertex(mm)
        if hit is not None:
            c, comps = hit
            if c not in cuts:
                cuts[c] = CutPoint(c)
            order = {lab: i for i, lab in enumerate(mm.labels)}
            children = []
            for comp in comps:
                part = sorted(comp + (c,), key=order.__getitem__)
                children.append(restrict(mm, part))
            work.extend(reversed(children))
            continue
        vcut = find_virtual_cut_point(
            mm, name=f"{SYNTHETIC_PREFIX}{next(counter)}")
        if vcut is not None:
            cuts[vcut.label] = vcut
            work.append(adjoin_point(mm, vcut))
            continue
        leaves.append(mm)

    cut_labels = set(cuts)
    incidence = []
    for li, leaf in enumerate(leaves):
        for lab in leaf.labels:
            if lab in cut_labels:
                incidence.append((li, lab))
    return DecompositionTree(tuple(leaves), tuple(cuts.values()),
                             tuple(incidence), len(leaves),
                             tuple(leaf_cycles))

"""Random instance generation and independent brute-force oracles.

The generator grows random X-cacti with exact rational weights and returns
the graph together with its induced metric; the oracle enumerates all
cyclic orders of a small metric to certify cycle recognition.  Everything
is deterministic given the seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cycles import CyclicOrder
from .errors import (
    MetricAxiomError,
    OracleSizeError,
    PerturbationError,
    TooFewPointsError,
)
from .graph import WeightedGraph, XCactus, induced_metric, make_graph
from .metric import FiniteMetric, validate_metric
from .values import Value

# recorded in CLI metadata so golden files stay reproducible across releases
RNG_ALGORITHM = "python-random-mt19937"

# small denominators keep exact arithmetic fast
_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 16)


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random instance; equal specs give identical output."""

    seed: int
    n_labels: int
    cycle_fraction: float = 0.35
    weight_range: tuple[Fraction, Fraction] = (Fraction(1), Fraction(4))


def _draw_weight(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    q = rng.choice(_DENOMINATORS)
    pmin = -(-lo.numerator * q // lo.denominator)  # ceil(lo * q)
    pmax = hi.numerator * q // hi.denominator      # floor(hi * q)
    if pmax < pmin:
        pmin = pmax = max(1, pmax)
    return Fraction(rng.randint(pmin, pmax), q)


def _draw_cycle_weights(rng, length, lo, hi) -> list[Fraction]:
    """Cycle weights with every edge strictly lighter than the rest of the
    cycle, so each edge is needed and the cycle is a minimal realization."""
    for _ in range(64):
        ws = [_draw_weight(rng, lo, hi) for _ in range(length)]
        if max(ws) * 2 < sum(ws):
            return ws
    # very wide weight ranges can keep failing; shrink heavy edges until
    # every edge is lighter than the rest of the cycle
    while max(ws) * 2 >= sum(ws):
        i = ws.index(max(ws))
        ws[i] = (sum(ws) - ws[i]) * Fraction(1, 2)
    return ws


def gen_cactus(spec: GenSpec) -> tuple[XCactus, FiniteMetric]:
    """Grow a random X-cactus and return it with its induced metric.

    Starting from a single edge, repeatedly attach either a pendant edge or
    a cycle of length 4-8 (sharing one vertex) at a uniformly chosen vertex,
    until the number of label-eligible vertices (degree <= 2) reaches
    ``n_labels`` exactly.  All leaves and degree-2 vertices are then
    labeled, which makes the result an X-cactus.
    """
    if spec.n_labels < 2:
        raise TooFewPointsError("need at least 2 labels")
    rng = random.Random(spec.seed)
    lo, hi = (Fraction(w) for w in spec.weight_range)
    if not 0 < lo <= hi:
        raise ValueError("weight_range must be positive and ordered")

    degree = {0: 1, 1: 1}
    edges: list[tuple[int, int, Fraction]] = [(0, 1, _draw_weight(rng, lo, hi))]
    next_id = 2

    def eligible() -> int:
        return sum(1 for d in degree.values() if d <= 2)

    stalls = 0
    while eligible() < spec.n_labels:
        remaining = spec.n_labels - eligible()
        vs = sorted(degree)
        v = rng.choice(vs)
        if rng.random() < spec.cycle_fraction:
            length = rng.randint(4, 8)
            gain = (length - 1) - (1 if degree[v] <= 2 else 0)
            if gain <= remaining:
                ws = _draw_cycle_weights(rng, length, lo, hi)
                ring = [v] + list(range(next_id, next_id + length - 1))
                next_id += length - 1
                for i in range(length):
                    a, b = ring[i], ring[(i + 1) % length]
                    edges.append((a, b, ws[i]))
                for u in ring[1:]:
                    degree[u] = 2
                degree[v] += 2
                stalls = 0
                continue
        if stalls > 8:
            # force progress: a pendant anywhere but a degree-2 vertex
            # always adds one label slot
            v = min(u for u, d in degree.items() if d != 2)
        gain = 1 - (1 if degree[v] == 2 else 0)
        if gain <= remaining:
            edges.append((v, next_id, _draw_weight(rng, lo, hi)))
            degree[next_id] = 1
            degree[v] += 1
            next_id += 1
            if gain == 0:
                stalls += 1
            else:
                stalls = 0
        else:
            stalls += 1

    labeled = [v for v in sorted(degree) if degree[v] <= 2]
    width = len(str(len(labeled)))
    names = {v: f"p{i + 1:0{width}d}" for i, v in enumerate(labeled)}
    g = make_graph(((v, names.get(v)) for v in sorted(degree)), edges)
    metric = induced_metric(g, [names[v] for v in labeled])
    return XCactus(g, frozenset(names.values())), metric


def gen_tree(spec: GenSpec) -> tuple[XCactus, FiniteMetric]:
    """Random X-tree: a cactus grown with no cycles at all."""
    return gen_cactus(GenSpec(spec.seed, spec.n_labels, 0.0, spec.weight_range))


def bruteforce_optimal_cycle(m: FiniteMetric) -> Optional[CyclicOrder]:
    """Oracle: enumerate all (n-1)!/2 cyclic orders of the labels; accept an
    order whose cycle (edge weights = endpoint distances) realizes m with no
    slack vertex.  Returns the accepted order, unique up to rotation and
    reflection, or None."""
    n = m.n
    if n < 4:
        raise TooFewPointsError("cycle enumeration needs at least 4 points")
    if n > 8:
        raise OracleSizeError("cycle enumeration supports at most 8 points")
    rows = m.rows
    cmp = m.cmp
    rest = list(range(1, n))
    for perm in itertools.permutations(rest):
        if perm[0] > perm[-1]:
            continue  # each cycle once: skip reflections
        seq = (0,) + perm
        weights = [rows[seq[i]][seq[(i + 1) % n]] for i in range(n)]
        total = sum(weights)
        pref = [0]
        for w in weights:
            pref.append(pref[-1] + w)
        good = True
        for i in range(n):
            if not good:
                break
            for j in range(i + 1, n):
                arc = pref[j] - pref[i]
                dist = arc if arc <= total - arc else total - arc
                if cmp.ne(dist, rows[seq[i]][seq[j]]):
                    good = False
                    break
        if not good:
            continue
        slack = False
        for i in range(n):
            a, v, b = seq[(i - 1) % n], seq[i], seq[(i + 1) % n]
            if cmp.gt(rows[a][v] + rows[v][b], rows[a][b]):
                slack = True
                break
        if slack:
            continue
        return CyclicOrder(tuple(m.labels[i] for i in seq), tuple(weights))
    return None


def perturb_metric(m: FiniteMetric, seed: int, magnitude) -> FiniteMetric:
    """Perturb one uniformly chosen off-diagonal pair by +-magnitude
    (symmetrically), keeping the result a valid metric; retries with fresh
    pairs and signs when an attempt breaks an axiom."""
    mag = Fraction(magnitude) if m.cmp.exact else float(magnitude)
    if mag == 0:
        return m
    rng = random.Random(seed)
    n = m.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for _ in range(64):
        i, j = rng.choice(pairs)
        delta = mag if rng.random() < 0.5 else -mag
        rows = [list(r) for r in m.rows]
        rows[i][j] += delta
        rows[j][i] += delta
        try:
            return validate_metric(rows, m.labels, m.cmp)
        except MetricAxiomError:
            continue
    raise PerturbationError(
        f"no valid perturbation of magnitude {magnitude} found")

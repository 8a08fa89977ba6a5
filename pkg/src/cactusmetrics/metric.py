"""Finite metrics: validated labeled distance matrices and the elementary
predicates (Gromov products, betweenness, closest pairs) everything else
builds on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    MetricAxiomError,
    SubsetTooSmallError,
    TooFewPointsError,
    UnknownLabelError,
)
from .values import EXACT, Comparator, Value, coerce_value

# Labels starting with this prefix are reserved for points adjoined during
# decomposition; user input must not use it.
SYNTHETIC_PREFIX = "~"


@dataclass(frozen=True)
class FiniteMetric:
    """A metric on a finite labeled point set.

    ``rows`` is the full symmetric matrix indexed by label position.  The
    comparator decides equality questions for all derived predicates, so a
    metric built in float mode carries its tolerance with it.
    """

    labels: tuple[str, ...]
    rows: tuple[tuple[Value, ...], ...]
    cmp: Comparator = EXACT
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def has_label(self, label: str) -> bool:
        return label in self._index

    def d(self, x: str, y: str) -> Value:
        return self.rows[self.index(x)][self.index(y)]

    def at(self, i: int, j: int) -> Value:
        return self.rows[i][j]


def validate_metric(matrix: Sequence[Sequence], labels: Sequence[str],
                    cmp: Comparator = EXACT) -> FiniteMetric:
    """Check the metric axioms and return the validated metric.

    Raises MetricAxiomError naming the first violated axiom together with a
    witness pair or triple.  Scan order: shape, labels, diagonal, negativity,
    symmetry, zero off-diagonal, triangle inequality.
    """
    labels = tuple(labels)
    n = len(labels)
    if n < 2:
        raise TooFewPointsError("a metric needs at least two points")
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise MetricAxiomError("not_square", labels[:1],
                               detail=f"expected {n}x{n}")
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise MetricAxiomError("bad_label", (lab,))
        if lab in seen:
            raise MetricAxiomError("duplicate_label", (lab,))
        seen.add(lab)
        if lab.startswith(SYNTHETIC_PREFIX):
            raise MetricAxiomError("reserved_label_prefix", (lab,))

    rows = tuple(tuple(coerce_value(v, cmp.exact) for v in row) for row in matrix)

    for i in range(n):
        if not cmp.is_zero(rows[i][i]):
            raise MetricAxiomError("nonzero_diagonal", (labels[i],))
    for i in range(n):
        for j in range(n):
            if rows[i][j] < 0:
                raise MetricAxiomError("negative_entry", (labels[i], labels[j]))
    for i in range(n):
        for j in range(i + 1, n):
            if cmp.ne(rows[i][j], rows[j][i]):
                raise MetricAxiomError("asymmetric", (labels[i], labels[j]))
            if cmp.is_zero(rows[i][j]):
                raise MetricAxiomError("zero_off_diagonal", (labels[i], labels[j]))
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            dij = ri[j]
            rj = rows[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if cmp.gt(dij, ri[k] + rj[k]):
                    raise MetricAxiomError(
                        "triangle_violation", (labels[i], labels[j], labels[k]))
    return FiniteMetric(labels, rows, cmp)


def gromov_product(m: FiniteMetric, x: str, y: str, z: str) -> Value:
    """(d(x,z) + d(y,z) - d(x,y)) / 2: the product of x and y at z.

    Nonnegative for every valid metric; zero exactly when z lies between
    x and y.
    """
    if len({x, y, z}) != 3:
        raise ValueError("gromov_product needs three distinct labels")
    i, j, k = m.index(x), m.index(y), m.index(z)
    return (m.rows[i][k] + m.rows[j][k] - m.rows[i][j]) / 2


def is_between(m: FiniteMetric, a: str, c: str, b: str) -> bool:
    """True when c lies on a geodesic between a and b: d(a,c)+d(c,b) = d(a,b)."""
    if len({a, b, c}) != 3:
        raise ValueError("is_between needs three distinct labels")
    i, k, j = m.index(a), m.index(c), m.index(b)
    return m.cmp.eq(m.rows[i][k] + m.rows[k][j], m.rows[i][j])


def restrict(m: FiniteMetric, subset: Iterable[str]) -> FiniteMetric:
    """Submatrix on the given labels (order preserved).  No revalidation:
    the axioms are inherited by any subset."""
    subset = tuple(subset)
    if len(subset) < 2:
        raise SubsetTooSmallError("restriction needs at least two labels")
    if len(set(subset)) != len(subset):
        raise SubsetTooSmallError("restriction labels must be distinct")
    idx = [m.index(s) for s in subset]
    rows = tuple(tuple(m.rows[i][j] for j in idx) for i in idx)
    return FiniteMetric(subset, rows, m.cmp)


def closest_pair(m: FiniteMetric) -> tuple[str, str]:
    """The pair at minimum distance; ties broken by smallest index pair in
    label order, returned lower index first.  Deterministic."""
    best = None
    best_pair = None
    for i in range(m.n):
        ri = m.rows[i]
        for j in range(i + 1, m.n):
            if best is None or ri[j] < best:
                best = ri[j]
                best_pair = (i, j)
    if best_pair is None:
        raise TooFewPointsError("closest_pair needs at least two points")
    return m.labels[best_pair[0]], m.labels[best_pair[1]]

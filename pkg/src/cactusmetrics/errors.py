"""Exception types shared across the package."""


class CactusMetricsError(Exception):
    """Base class for every error raised by this library."""


class MetricAxiomError(CactusMetricsError):
    """A distance matrix violates a metric axiom (or the label rules).

    ``kind`` names the first violated axiom in scan order, ``witness`` the
    offending labels (a point, a pair, or a triple ``(x, y, via)``).
    """

    def __init__(self, kind, witness=(), detail=""):
        self.kind = kind
        self.witness = tuple(witness)
        msg = kind
        if self.witness:
            msg += ": " + ", ".join(str(w) for w in self.witness)
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnknownLabelError(CactusMetricsError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown label: {label!r}")


class SubsetTooSmallError(CactusMetricsError):
    pass


class TooFewPointsError(CactusMetricsError):
    pass


class InvalidGraphError(CactusMetricsError):
    """Graph violates the simple/connected/positive-weight invariants."""


class DisconnectedGraphError(InvalidGraphError):
    pass


class MultiEdgeConflictError(CactusMetricsError):
    """Suppressing a degree-2 vertex would create a parallel edge.

    Both edges carry distance information, which only happens when the input
    was not a minimal realization.
    """

    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"suppression would duplicate edge {u}-{v}")


class ConflictingEdgeError(CactusMetricsError):
    """Two glued parts define the same labeled edge with different weights."""


class DisconnectedUnionError(CactusMetricsError):
    """Glued parts do not share enough labels to form one connected graph."""


class InconsistentCutError(CactusMetricsError):
    """A candidate cut point sits at distance zero from a label.

    That label would itself be a cut vertex, so the caller's guarantee that
    no labeled cut vertex exists was violated (or a float tolerance misfired).
    """


class PropertyViolationError(CactusMetricsError):
    """An input contradicts a structural guarantee it was required to satisfy."""


class PreconditionError(CactusMetricsError):
    pass


class NotCactusMetricError(CactusMetricsError):
    """Raised by operations that need a cactus metric when given one that is not."""

    def __init__(self, rejection):
        self.rejection = rejection
        super().__init__(f"not a cactus metric: {rejection}")


class OracleSizeError(CactusMetricsError):
    """Brute-force enumeration was asked for more points than it supports."""


class PerturbationError(CactusMetricsError):
    """No valid perturbation was found within the retry budget."""

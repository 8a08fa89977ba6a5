"""Scikit-learn style front end.

`CactusRealizer` is a fit-shaped wrapper around the realization pipeline:
fit it on a precomputed distance matrix (the way sklearn consumes
``metric='precomputed'`` inputs) and read the realization, classification
and certificate off the fitted attributes.  It composes with the usual
estimator machinery (``get_params``/``set_params``/``clone``).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .graph import total_weight
from .metric import FiniteMetric, validate_metric
from .pipeline import realize_cactus
from .values import EXACT, tolerant


class CactusRealizer(BaseEstimator):
    """Recognize a cactus metric and construct its optimal realization.

    Parameters
    ----------
    mode : "exact" or "float"
        Numeric policy.  Exact mode turns entries into rationals (strings
        and ints losslessly, floats via their decimal repr); float mode
        compares with a relative tolerance.
    epsilon : float
        Relative tolerance for float mode; ignored in exact mode.

    Attributes (after ``fit``)
    --------------------------
    realization_ : XCactus or None
        The optimal realization when the input is a cactus metric.
    kind_ : str
        "TreeMetric", "Cyclelike", "CactusGeneral" or "NotCactus".
    certificate_ : dict or None
    rejection_ : dict or None
        Machine-readable reason when the metric is rejected.
    optimal_weight_ : total edge weight of the realization, or None.
    """

    def __init__(self, mode="exact", epsilon=1e-9):
        self.mode = mode
        self.epsilon = epsilon

    def _comparator(self):
        if self.mode == "exact":
            return EXACT
        if self.mode == "float":
            return tolerant(self.epsilon)
        raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")

    def fit(self, X, y=None, labels=None):
        """Fit on a square distance matrix (array-like or FiniteMetric)."""
        cmp = self._comparator()
        if isinstance(X, FiniteMetric):
            metric = X
        else:
            arr = np.asarray(X, dtype=object)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(f"expected a square matrix, got {arr.shape}")
            if labels is None:
                labels = [f"p{i + 1}" for i in range(arr.shape[0])]
            metric = validate_metric(arr.tolist(), labels, cmp)
        result = realize_cactus(metric)
        self.metric_ = metric
        self.labels_ = list(metric.labels)
        self.n_features_in_ = metric.n
        self.result_ = result
        self.realization_ = result.cactus
        self.kind_ = result.kind().value
        self.certificate_ = result.certificate.as_dict() if result.certificate else None
        self.rejection_ = result.rejection.as_dict() if result.rejection else None
        self.optimal_weight_ = (total_weight(result.cactus.graph)
                                if result.realized else None)
        return self

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError("call fit() first")

    @property
    def is_cactus_metric_(self) -> bool:
        self._check_fitted()
        return self.result_.realized

    def induced_distances(self):
        """Distance matrix reproduced by the fitted realization, in the
        order of ``labels_`` (equals the input for accepted metrics)."""
        self._check_fitted()
        if not self.result_.realized:
            raise NotFittedError("metric was rejected; no realization")
        from .graph import induced_metric
        m = induced_metric(self.result_.cactus.graph, self.labels_,
                           self.metric_.cmp)
        return [list(row) for row in m.rows]

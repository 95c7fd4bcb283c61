"""scikit-learn style wrappers.

Each estimator is configured with a graph (a :class:`GraphModel` or a graph
spec string such as ``"zd:2"`` or ``"prod:cycle:3,cycle:4"``). ``fit``
resolves and validates the graph; ``transform``/``predict`` evaluate at a
column of points, so the objects drop into pipelines and grid searches.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .determinant import regdet
from .exceptions import PoleError, UsageError
from .graph import GraphModel, parse_graph_spec
from .spectral import heat_function
from .validation import check_points
from .zeta import spectral_zeta, zeta_lattice_continuation, zeta_mellin, zeta_z_closed

ZETA_METHODS = ("auto", "closed", "mellin", "continuation")


def _resolve(graph) -> GraphModel:
    if isinstance(graph, GraphModel):
        return graph
    if isinstance(graph, str):
        return parse_graph_spec(graph)
    raise UsageError(f"graph must be a GraphModel or a spec string, got {graph!r}")


class _GraphEstimator(BaseEstimator):
    def __init__(self, graph="zd:1"):
        self.graph = graph

    def fit(self, X=None, y=None):
        self.model_ = _resolve(self.graph)
        return self

    def _column(self, values):
        return np.asarray(values).reshape(-1, 1)


class HeatKernelTransformer(TransformerMixin, _GraphEstimator):
    """Maps times ``t >= 0`` to the heat function ``H_t`` of the graph."""

    def transform(self, X):
        check_is_fitted(self, "model_")
        t = check_points(X, "t")
        return self._column([heat_function(self.model_, float(v)) for v in t])


class RegularizedDeterminant(TransformerMixin, _GraphEstimator):
    """Maps ``x > 0`` to ``det*(x + Delta)``."""

    def transform(self, X):
        check_is_fitted(self, "model_")
        x = check_points(X, "x")
        return self._column([regdet(self.model_, float(v)) for v in x])


class SpectralZeta(_GraphEstimator):
    """Evaluates the spectral zeta function at real points.

    ``method`` picks the evaluation route for lattices: ``"closed"`` (Z
    only), ``"mellin"`` (inside the convergence strip), ``"continuation"``
    or ``"auto"``. Poles evaluate to ``nan`` unless ``raise_on_pole``.
    """

    def __init__(self, graph="zd:1", method="auto", strip=None, raise_on_pole=False):
        self.graph = graph
        self.method = method
        self.strip = strip
        self.raise_on_pole = raise_on_pole

    def fit(self, X=None, y=None):
        if self.method not in ZETA_METHODS:
            raise UsageError(f"method must be one of {ZETA_METHODS}, got {self.method!r}")
        super().fit(X, y)
        if self.method == "closed" and not (self.model_.is_finite or self.model_.regular_degree == 2):
            raise UsageError("the closed form is available for Z and finite graphs only")
        return self

    def _one(self, s: float) -> complex:
        m = self.model_
        if self.method == "mellin":
            return zeta_mellin(m, s)
        if self.method == "continuation":
            if m.is_finite:
                raise UsageError("continuation applies to lattices only")
            M = self.strip if self.strip is not None else max(2, int(np.floor(s)) + 1)
            return zeta_lattice_continuation(m.d, s, M)
        if self.method == "closed" and not m.is_finite:
            return zeta_z_closed(s)
        return spectral_zeta(m, s, M=self.strip)

    def predict(self, X):
        check_is_fitted(self, "model_")
        s = check_points(X, "s")
        out = np.empty(s.shape, dtype=complex)
        for i, v in enumerate(s):
            try:
                out[i] = self._one(float(v))
            except PoleError:
                if self.raise_on_pole:
                    raise
                out[i] = complex(np.nan, np.nan)
        return out

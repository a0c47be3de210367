"""scikit-learn wrappers so capacity features drop into pipelines.

Rows of ``X`` describe qubit states as ``(r, re_alpha, im_alpha)``; a
two-column ``X`` is read as ``(r, |alpha|)`` with real coherence.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import InvalidStateError
from .jc import JCConfig, times_to_efficiencies
from .scan import RESOURCES, resources
from .states import QubitState, ThermalContext


def check_qubit_array(X) -> np.ndarray:
    """Validate an array of qubit states; returns float array of shape (n, 3)."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] == 2:
        X = np.column_stack([X, np.zeros(len(X))])
    if X.shape[1] != 3:
        raise ValueError(f"expected 2 or 3 columns (r, re_alpha[, im_alpha]), got {X.shape[1]}")
    r, a2 = X[:, 0], X[:, 1] ** 2 + X[:, 2] ** 2
    bad = (r < -1e-12) | (r > 1 + 1e-12) | (a2 > r * (1 - r) + 1e-12)
    if np.any(bad):
        raise InvalidStateError(f"rows {np.flatnonzero(bad)[:5].tolist()} are not valid qubit states")
    return X


def check_temp_ratio(temp_ratio) -> ThermalContext:
    t = float(temp_ratio)
    if t < 0 or math.isnan(t):
        raise ValueError(f"temp_ratio must be >= 0 or inf, got {temp_ratio!r}")
    return ThermalContext.from_temp_ratio(t)


def _states(X):
    return [QubitState(r, complex(re, im)) for r, re, im in X]


class ThermalCapacityTransformer(TransformerMixin, BaseEstimator):
    """Map qubit states to capacity, free energy, negentropy and coherence.

    Parameters
    ----------
    temp_ratio : float, default=1.0
        Bath temperature in units of the gap, ``kT / dE``; 0 and inf allowed.
    features : tuple of str, default=all
        Subset of ``("tic", "free_energy", "negentropy", "coherence")``.
    """

    def __init__(self, temp_ratio=1.0, features=RESOURCES):
        self.temp_ratio = temp_ratio
        self.features = features

    def fit(self, X, y=None):
        X = check_qubit_array(X)
        unknown = set(self.features) - set(RESOURCES)
        if unknown or not self.features:
            raise ValueError(f"unknown features {sorted(unknown)}")
        self.context_ = check_temp_ratio(self.temp_ratio)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "context_")
        X = check_qubit_array(X)
        out = np.empty((len(X), len(self.features)))
        for i, state in enumerate(_states(X)):
            res = resources(state, self.context_)
            out[i] = [res[k] for k in self.features]
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(list(self.features), dtype=object)


class JCEncodingTimer(BaseEstimator):
    """Predict the Jaynes-Cummings time to reach ``efficiency * capacity``.

    ``predict`` returns NaN where the target is not reached by ``tau_max``.
    """

    def __init__(self, temp_ratio=0.5, efficiency=0.9, tau_max=2.0, tau_steps=4000, fock_cutoff=None):
        self.temp_ratio = temp_ratio
        self.efficiency = efficiency
        self.tau_max = tau_max
        self.tau_steps = tau_steps
        self.fock_cutoff = fock_cutoff

    def fit(self, X=None, y=None):
        if not 0 < self.efficiency <= 1:
            raise ValueError("efficiency must lie in (0, 1]")
        self.context_ = check_temp_ratio(self.temp_ratio)
        self.config_ = JCConfig(self.context_.lam, self.fock_cutoff, self.tau_max, self.tau_steps)
        if X is not None:
            self.n_features_in_ = check_qubit_array(X).shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "config_")
        X = check_qubit_array(X)
        out = np.empty(len(X))
        for i, state in enumerate(_states(X)):
            tau = times_to_efficiencies(state, [self.efficiency], self.context_, self.config_)[0]
            out[i] = np.nan if tau is None else tau
        return out

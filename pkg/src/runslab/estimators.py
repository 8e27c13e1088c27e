"""scikit-learn transformers over arrays of permutations.

Rows of ``X`` are permutations of ``1..n`` in one-line notation, so these
compose with ``Pipeline``/``FunctionTransformer`` and friends.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .enumeration import block_run_counts
from .exceptions import InvalidInputError
from .group import generator_set, minimal_representative_with_mask
from .perm import MAX_N, Permutation


def check_permutation_array(X) -> np.ndarray:
    """Validate a 2-D integer array whose rows are permutations of ``1..n``."""
    X = check_array(X, dtype=np.int64, ensure_2d=True)
    n = X.shape[1]
    if n > MAX_N:
        raise InvalidInputError(f"rows of length {n} exceed the supported maximum {MAX_N}")
    expected = np.arange(1, n + 1)
    bad = np.flatnonzero((np.sort(X, axis=1) != expected).any(axis=1))
    if bad.size:
        raise InvalidInputError(
            f"row {bad[0]} is not a permutation of 1..{n}: {X[bad[0]].tolist()}"
        )
    return X


class _PermutationTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        X = check_permutation_array(X)
        self.n_features_in_ = X.shape[1]
        return self

    def _validate_for_transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = check_permutation_array(X)
        if X.shape[1] != self.n_features_in_:
            raise InvalidInputError(
                f"X has {X.shape[1]} columns, fitted on {self.n_features_in_}"
            )
        return X


class RunCountTransformer(_PermutationTransformer):
    """Map each permutation to its number of alternating runs.

    >>> RunCountTransformer().fit_transform([[3, 1, 5, 4, 6, 2], [1, 2, 3, 4, 5, 6]]).ravel()
    array([5, 1])
    """

    def transform(self, X):
        X = self._validate_for_transform(X)
        return block_run_counts(X).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array(["run_count"], dtype=object)


class OrbitCanonicalizer(_PermutationTransformer):
    """Replace each permutation by the minimal member of its orbit.

    Parameters
    ----------
    order : {"ascending", "descending"}
        Order in which generators are tried by the greedy pass.  Both give
        the same representative; the option exists to check exactly that.
    """

    def __init__(self, order="ascending"):
        self.order = order

    def fit(self, X, y=None):
        if self.order not in ("ascending", "descending"):
            raise InvalidInputError(f"unknown generator order {self.order!r}")
        super().fit(X, y)
        self.generators_ = generator_set(self.n_features_in_)
        self.m_ = self.generators_.m
        return self

    def _canonicalize(self, X):
        X = self._validate_for_transform(X)
        out = np.empty_like(X)
        masks = np.empty(X.shape[0], dtype=np.int64)
        for row, p in enumerate(X):
            q, g = minimal_representative_with_mask(
                Permutation._trusted(int(v) for v in p), self.generators_, order=self.order
            )
            out[row] = q
            masks[row] = g.mask
        return out, masks

    def transform(self, X):
        return self._canonicalize(X)[0]

    def orbit_masks(self, X):
        """Group-element mask taking each row to its representative."""
        return self._canonicalize(X)[1]

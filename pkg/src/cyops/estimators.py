"""scikit-learn style wrappers.

Operators play the role of samples: ``fit`` computes and stores the local
data with trailing-underscore attributes, ``transform``/``predict`` map a
batch of operators to results. Parameters follow the estimator conventions
so ``get_params``/``set_params``/``clone`` work as usual.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .checker import DEFAULT_DEPTH, DEFAULT_PRIME_BOUND, check_cy_type
from .frobenius import DEFAULT_TRUNCATION
from .normal_form import lambert_coefficients, normal_form
from .validation import check_operator, check_operators, check_positive_int


class LocalNormalForm(TransformerMixin, BaseEstimator):
    """Normal-form data at the MUM point of one operator.

    ``transform`` returns, for each operator, the Lambert coefficients
    N_1..N_depth of every Y-invariant with weight ``ell``.
    """

    def __init__(self, truncation: int = DEFAULT_TRUNCATION, ell: int = 3, depth: int = 5):
        self.truncation = truncation
        self.ell = ell
        self.depth = depth

    def _validate(self):
        check_positive_int(self.truncation, "truncation", 2)
        check_positive_int(self.ell, "ell", 0)
        check_positive_int(self.depth, "depth")
        if self.depth + 1 > self.truncation:
            raise ValueError("depth must be smaller than truncation")

    def fit(self, X, y=None):
        self._validate()
        L = check_operator(X if not isinstance(X, (list, tuple)) else X[0])
        nf = normal_form(L, self.truncation)
        self.operator_ = L
        self.flag_ = nf.flag
        self.structure_series_ = nf.structure_series
        self.q_ = nf.q
        self.q_inverse_ = nf.q_inverse
        self.y_invariants_ = nf.y_invariants
        return self

    def transform(self, X):
        check_is_fitted(self, "q_")
        self._validate()
        out = []
        for L in check_operators(X):
            nf = normal_form(L, self.truncation)
            out.append([lambert_coefficients(Y, self.ell, self.depth).coefficients
                        for Y in nf.y_invariants])
        return out


class CYTypeChecker(BaseEstimator):
    """Predicts the overall CY-type verdict of each operator."""

    def __init__(self, truncation: int = 30, depth: int = DEFAULT_DEPTH,
                 prime_bound: int = DEFAULT_PRIME_BOUND):
        self.truncation = truncation
        self.depth = depth
        self.prime_bound = prime_bound

    def fit(self, X=None, y=None):
        check_positive_int(self.truncation, "truncation", 2)
        check_positive_int(self.depth, "depth", 2)
        check_positive_int(self.prime_bound, "prime_bound", 2)
        self.verdicts_ = [self._verdict(L) for L in check_operators(X)] if X is not None else []
        return self

    def _verdict(self, L):
        return check_cy_type(L, self.truncation, self.prime_bound, self.depth)

    def decision(self, X):
        """Full verdict objects for each operator."""
        check_is_fitted(self, "verdicts_")
        return [self._verdict(L) for L in check_operators(X)]

    def predict(self, X):
        return [v.overall for v in self.decision(X)]

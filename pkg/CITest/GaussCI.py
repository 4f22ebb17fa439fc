"""Fisher-z partial-correlation test on Gaussian data."""

import math
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.stats import norm

try:
    from CITest.Oracle import CIOracle, CIResult
    from Graph.MixedGraph import VertexId
    from utils.exceptions import (
        InsufficientSamplesException,
        InvalidQueryException,
        SingularSubmatrixException,
        ValidationException,
    )
    from utils.logger import get_logger
except ImportError:
    from .Oracle import CIOracle, CIResult
    from ..Graph.MixedGraph import VertexId
    from ..utils.exceptions import (
        InsufficientSamplesException,
        InvalidQueryException,
        SingularSubmatrixException,
        ValidationException,
    )
    from ..utils.logger import get_logger

logger = get_logger()

SINGULAR_TOL = 1e-10
R_CLAMP = 1.0 - 1e-12


class GaussianData:
    """n x p sample with a lazily computed, cached correlation matrix."""

    def __init__(self, columns: np.ndarray, labels: Optional[Sequence[str]] = None):
        columns = np.asarray(columns, dtype=float)
        if columns.ndim != 2:
            raise ValidationException("columns", f"expected a 2-D array, got {columns.ndim}-D")
        if columns.shape[0] < 1:
            raise ValidationException("columns", "dataset has no rows")
        if labels is not None and len(labels) != columns.shape[1]:
            raise ValidationException(
                "labels", f"expected {columns.shape[1]} labels, got {len(labels)}"
            )
        self.columns = columns
        self.labels = tuple(labels) if labels is not None else None

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def p(self) -> int:
        return self.columns.shape[1]

    @cached_property
    def correlation(self) -> np.ndarray:
        corr = np.atleast_2d(np.corrcoef(self.columns, rowvar=False))
        corr = (corr + corr.T) / 2.0
        np.fill_diagonal(corr, 1.0)
        return corr


def partial_correlation(corr: np.ndarray, u: int, v: int, S: Sequence[int]) -> float:
    """Partial correlation of u and v given S from the inverse of the correlation
    submatrix over (u, v, *S).

    Raises:
        SingularSubmatrixException: the submatrix is numerically rank deficient
    """
    idx = [u, v, *S]
    sub = corr[np.ix_(idx, idx)]
    if not np.all(np.isfinite(sub)):
        raise SingularSubmatrixException(u, v, S)
    singular_values = np.linalg.svd(sub, compute_uv=False)
    if singular_values[-1] < SINGULAR_TOL:
        raise SingularSubmatrixException(u, v, S)
    precision = np.linalg.pinv(sub)
    return float(-precision[0, 1] / math.sqrt(precision[0, 0] * precision[1, 1]))


def gauss_ci(
    data: GaussianData, u: VertexId, v: VertexId, S: Iterable[VertexId], alpha: float
) -> CIResult:
    """Fisher-z test of u independent of v given S.

    Args:
        data: the sample
        u, v: tested variables
        S: conditioning set
        alpha: significance level in (0, 1)

    Returns:
        CIResult: independent iff the two-sided p-value exceeds alpha

    Raises:
        InsufficientSamplesException: |S| > n - 4
        SingularSubmatrixException: degenerate correlation submatrix
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidQueryException(f"alpha must lie in (0,1), got {alpha}")
    S = sorted(S)
    if len(S) > data.n - 4:
        raise InsufficientSamplesException(data.n, len(S))

    r = partial_correlation(data.correlation, u, v, S)
    r = min(max(r, -R_CLAMP), R_CLAMP)
    z = math.atanh(r)
    statistic = math.sqrt(data.n - len(S) - 3) * abs(z)
    p_value = min(1.0, max(0.0, 2.0 * float(norm.sf(statistic))))
    return CIResult(independent=p_value > alpha, p_value=p_value)


class GaussianOracle(CIOracle):
    """Fisher-z backend at a fixed significance level."""

    def __init__(self, data: GaussianData, alpha: float):
        if not 0.0 < alpha < 1.0:
            raise InvalidQueryException(f"alpha must lie in (0,1), got {alpha}")
        super().__init__(data.p)
        self.data = data
        self.alpha = alpha

    def _decide(self, u, v, S):
        return gauss_ci(self.data, u, v, S, self.alpha)

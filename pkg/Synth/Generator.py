"""Random chain graphs and Gaussian samples faithful to them.

Graphs follow the six-step protocol: a Bernoulli(s) lower triangle with s = N/(p-1),
symmetrized, cut into k contiguous chain components (k uniform on 1..p), with edges
across components directed from the earlier component to the later one.

Samples follow the block-recursive linear model: for a chain component with precision
L and parent weights B, X_comp | x_pa ~ N(L^-1 B x_pa, L^-1).
"""

import hashlib
import json
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

try:
    from CITest.GaussCI import GaussianData
    from Graph.MixedGraph import Edge, MixedGraph, VertexId, chain_components, component_order
    from utils.exceptions import NonPositiveDefiniteException, ValidationException
    from utils.logger import get_logger
except ImportError:
    from ..CITest.GaussCI import GaussianData
    from ..Graph.MixedGraph import Edge, MixedGraph, VertexId, chain_components, component_order
    from ..utils.exceptions import NonPositiveDefiniteException, ValidationException
    from ..utils.logger import get_logger

logger = get_logger()


class GenSpec(BaseModel):
    """p vertices with expected degree N, drawn from the given seed."""

    p: int = Field(ge=1)
    N: float = Field(default=2.0, ge=0.0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_degree(self):
        if self.N > max(self.p - 1, 0):
            raise ValueError(f"expected degree N={self.N} exceeds p-1={self.p - 1}")
        return self

    @property
    def edge_probability(self) -> float:
        return self.N / (self.p - 1) if self.p > 1 else 0.0


class ParamRanges(BaseModel):
    """Magnitude ranges for random parameters; signs are drawn uniformly."""

    weight_low: float = Field(default=0.5, gt=0.0)
    weight_high: float = Field(default=1.0, gt=0.0)
    precision_low: float = Field(default=0.1, gt=0.0)
    precision_high: float = Field(default=0.3, gt=0.0)

    @model_validator(mode="after")
    def _check_order(self):
        if self.weight_low > self.weight_high or self.precision_low > self.precision_high:
            raise ValueError("range lower bounds must not exceed upper bounds")
        return self


@dataclass(frozen=True)
class GaussianParams:
    weights: Dict[Edge, float]
    components: Tuple[Tuple[VertexId, ...], ...]
    precisions: Tuple[np.ndarray, ...]

    def precision_of(self, component) -> np.ndarray:
        key = tuple(sorted(component))
        try:
            return self.precisions[self.components.index(key)]
        except ValueError as e:
            raise ValidationException("params", f"no precision for component {key}") from e

    def to_dict(self) -> dict:
        return {
            "weights": [[u, v, w] for (u, v), w in sorted(self.weights.items())],
            "components": [list(c) for c in self.components],
            "precisions": [m.tolist() for m in self.precisions],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GaussianParams":
        return cls(
            weights={(int(u), int(v)): float(w) for u, v, w in data["weights"]},
            components=tuple(tuple(c) for c in data["components"]),
            precisions=tuple(np.asarray(m, dtype=float) for m in data["precisions"]),
        )

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()

    def check_against(self, g: MixedGraph) -> None:
        """Weights on exactly the arrows of g, precisions zero off its undirected edges."""
        if set(self.weights) != set(g.directed):
            raise ValidationException("params", "weights do not match the directed edges")
        for members in chain_components(g).components:
            key = tuple(sorted(members))
            precision = self.precision_of(key)
            for i, a in enumerate(key):
                for j, b in enumerate(key):
                    if i != j and (precision[i, j] != 0.0) != g.has_undirected(a, b):
                        raise ValidationException(
                            "params", f"precision sparsity of component {key} does not match"
                        )


def random_chain_graph(spec: GenSpec) -> MixedGraph:
    rng = np.random.default_rng(spec.seed)
    p = spec.p
    draws = np.tril(rng.random((p, p)) < spec.edge_probability, k=-1)
    adjacency = draws | draws.T

    k = int(rng.integers(1, p + 1))
    component = np.empty(p, dtype=int)
    for index, block in enumerate(np.array_split(np.arange(p), k)):
        component[block] = index

    directed, undirected = [], []
    for i, j in zip(*np.nonzero(np.triu(adjacency, k=1))):
        i, j = int(i), int(j)
        if component[i] == component[j]:
            undirected.append((i, j))
        else:
            directed.append((i, j))
    g = MixedGraph(p, directed, undirected)
    logger.debug(f"random chain graph p={p} k={k}: {len(directed)} arrows, {len(undirected)} lines")
    return g


def _signed(rng: np.random.Generator, low: float, high: float) -> float:
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(low, high))


def random_params(
    g: MixedGraph, seed: int, ranges: Optional[ParamRanges] = None
) -> GaussianParams:
    """Arrow weights and diagonally dominant component precisions."""
    ranges = ranges or ParamRanges()
    rng = np.random.default_rng(seed)
    weights = {
        edge: _signed(rng, ranges.weight_low, ranges.weight_high) for edge in sorted(g.directed)
    }

    components, precisions = [], []
    for members in chain_components(g).components:
        key = tuple(sorted(members))
        index = {v: i for i, v in enumerate(key)}
        precision = np.zeros((len(key), len(key)))
        for a, b in sorted(g.undirected):
            if a in index and b in index:
                value = _signed(rng, ranges.precision_low, ranges.precision_high)
                precision[index[a], index[b]] = precision[index[b], index[a]] = value
        np.fill_diagonal(precision, 1.0 + np.abs(precision).sum(axis=1))
        components.append(key)
        precisions.append(precision)
    return GaussianParams(weights, tuple(components), tuple(precisions))


def sample_gaussian(g: MixedGraph, params: GaussianParams, n: int, seed: int) -> GaussianData:
    """n i.i.d. rows drawn component by component in topological order.

    Raises:
        NonPositiveDefiniteException: a component precision is not positive definite
        ValidationException: n < 1, or params that belong to another graph
    """
    if n < 1:
        raise ValidationException("n", f"sample size must be positive, got {n}")
    params.check_against(g)
    rng = np.random.default_rng(seed)
    X = np.zeros((n, g.p))

    for members in component_order(g):
        key = sorted(members)
        precision = params.precision_of(key)
        try:
            np.linalg.cholesky(precision)
        except np.linalg.LinAlgError as e:
            raise NonPositiveDefiniteException(key) from e
        covariance = np.linalg.inv(precision)
        covariance = (covariance + covariance.T) / 2.0

        parents = sorted(set().union(*(g.parents(v) for v in key)))
        noise = rng.standard_normal((n, len(key))) @ np.linalg.cholesky(covariance).T
        if parents:
            B = np.array([[params.weights.get((a, v), 0.0) for a in parents] for v in key])
            X[:, key] = X[:, parents] @ B.T @ covariance + noise
        else:
            X[:, key] = noise
    return GaussianData(X, labels=g.labels)

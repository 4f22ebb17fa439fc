"""Conditional-independence oracles.

Every backend answers ``query(u, v, S)`` and counts the queries it served. The graph
backends answer from c-separation in a known chain graph; the scripted and noisy
backends perturb those answers to reproduce order-dependence effects.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from threading import Lock
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

import numpy as np

try:
    from Graph.MixedGraph import MixedGraph, VertexId
    from Graph.Separation import SeparationQuery, c_separated
    from utils.exceptions import InvalidQueryException
    from utils.logger import get_logger
except ImportError:
    from ..Graph.MixedGraph import MixedGraph, VertexId
    from ..Graph.Separation import SeparationQuery, c_separated
    from ..utils.exceptions import InvalidQueryException
    from ..utils.logger import get_logger

logger = get_logger()

QueryKey = Tuple[FrozenSet[VertexId], FrozenSet[VertexId]]


def query_key(u: VertexId, v: VertexId, S: Iterable[VertexId]) -> QueryKey:
    """Symmetric key of the query (u, v | S)."""
    return frozenset((u, v)), frozenset(S)


@dataclass(frozen=True)
class CIResult:
    independent: bool
    p_value: Optional[float] = None


class CIOracle(ABC):
    """Common contract of the independence backends."""

    def __init__(self, p: int):
        self._p = p
        self._count = 0
        self._count_lock = Lock()

    @property
    def p(self) -> int:
        return self._p

    @property
    def test_count(self) -> int:
        return self._count

    def reset_count(self) -> None:
        with self._count_lock:
            self._count = 0

    def query(self, u: VertexId, v: VertexId, S: Iterable[VertexId] = ()) -> CIResult:
        S = frozenset(S)
        if u == v:
            raise InvalidQueryException(f"query needs two distinct vertices, got {u} twice")
        if u in S or v in S:
            raise InvalidQueryException(f"conditioning set contains an endpoint of ({u},{v})")
        for x in (u, v, *S):
            if not 0 <= x < self._p:
                raise InvalidQueryException(f"vertex {x} outside [0,{self._p})")
        with self._count_lock:
            self._count += 1
        # canonical argument order makes every backend symmetric in (u, v)
        a, b = (u, v) if u < v else (v, u)
        return self._decide(a, b, S)

    @abstractmethod
    def _decide(self, u: VertexId, v: VertexId, S: FrozenSet[VertexId]) -> CIResult: ...


class GraphOracle(CIOracle):
    """Perfect independence information read off a chain graph."""

    def __init__(self, graph: MixedGraph):
        super().__init__(graph.p)
        self.graph = graph
        self._cache: Dict[QueryKey, bool] = {}

    def separated(self, u: VertexId, v: VertexId, S: FrozenSet[VertexId]) -> bool:
        key = query_key(u, v, S)
        hit = self._cache.get(key)
        if hit is None:
            hit = c_separated(self.graph, SeparationQuery.of({u}, {v}, S))
            self._cache[key] = hit
        return hit

    def _decide(self, u, v, S):
        return CIResult(independent=self.separated(u, v, S))


class ScriptedOracle(GraphOracle):
    """Graph oracle with a table of overridden answers."""

    def __init__(self, base: MixedGraph, overrides: Optional[Mapping[QueryKey, bool]] = None):
        super().__init__(base)
        self.overrides: Dict[QueryKey, bool] = dict(overrides or {})

    @classmethod
    def from_rules(
        cls, base: MixedGraph, rules: Iterable[Tuple[VertexId, VertexId, Iterable[VertexId], bool]]
    ) -> "ScriptedOracle":
        """Rules are (u, v, S, independent) tuples."""
        return cls(base, {query_key(u, v, S): bool(ind) for u, v, S, ind in rules})

    def _decide(self, u, v, S):
        forced = self.overrides.get(query_key(u, v, S))
        if forced is not None:
            return CIResult(independent=forced)
        return super()._decide(u, v, S)


class NoisyOracle(GraphOracle):
    """Graph oracle whose answer is flipped on a fixed pseudo-random subset of queries.

    Whether a query is flipped depends only on (seed, pair, S), so every run and every
    variable ordering sees the same answers.
    """

    def __init__(self, base: MixedGraph, flip_rate: float, seed: int):
        if not 0.0 <= flip_rate <= 1.0:
            raise InvalidQueryException(f"flip_rate must lie in [0,1], got {flip_rate}")
        super().__init__(base)
        self.flip_rate = flip_rate
        self.seed = seed
        self._flips: Dict[QueryKey, bool] = {}

    def flipped(self, u: VertexId, v: VertexId, S: FrozenSet[VertexId]) -> bool:
        key = query_key(u, v, S)
        hit = self._flips.get(key)
        if hit is None:
            mask = sum(1 << x for x in S)
            rng = np.random.default_rng([self.seed, min(u, v), max(u, v), mask])
            hit = bool(rng.random() < self.flip_rate)
            self._flips[key] = hit
        return hit

    def _decide(self, u, v, S):
        truth = self.separated(u, v, S)
        return CIResult(independent=truth != self.flipped(u, v, S))


def oracle_query(g: MixedGraph, u: VertexId, v: VertexId, S: Iterable[VertexId] = ()) -> CIResult:
    """One-off exact query against g."""
    return GraphOracle(g).query(u, v, S)


def scripted_query(
    o: ScriptedOracle, u: VertexId, v: VertexId, S: Iterable[VertexId] = ()
) -> CIResult:
    return o.query(u, v, S)

"""Skeleton recovery by level-wise conditional-independence search.

Two modes share one loop:

* ``original``: adjacency sets are read from the working graph as it shrinks, so the
  variable ordering can change which edges survive.
* ``stable``: adjacency sets are frozen at the start of every level; removals still
  happen immediately but cannot influence other decisions of that level.
"""

import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Literal, Optional, Sequence, Set, Tuple

import pandas as pd
from joblib import Parallel, delayed

try:
    from CITest.Oracle import CIOracle
    from Graph.MixedGraph import Edge, MixedGraph, VertexId, pair_key
    from utils.exceptions import (
        BaseAppException,
        MissingSepsetException,
        OracleQueryException,
        ValidationException,
    )
    from utils.logger import get_logger
except ImportError:
    from ..CITest.Oracle import CIOracle
    from ..Graph.MixedGraph import Edge, MixedGraph, VertexId, pair_key
    from ..utils.exceptions import (
        BaseAppException,
        MissingSepsetException,
        OracleQueryException,
        ValidationException,
    )
    from ..utils.logger import get_logger

logger = get_logger()

SkeletonMode = Literal["original", "stable"]
SKELETON_MODES = ("original", "stable")


@dataclass(frozen=True)
class VariableOrdering:
    """A permutation of the vertex ids; position in it drives every tie-break."""

    order: Tuple[VertexId, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValidationException("order", f"{list(self.order)} is not a permutation of 0..p-1")

    @classmethod
    def identity(cls, p: int) -> "VariableOrdering":
        return cls(tuple(range(p)))

    @classmethod
    def coerce(cls, order: "Optional[Sequence[VertexId] | VariableOrdering]", p: int):
        if order is None:
            return cls.identity(p)
        if isinstance(order, VariableOrdering):
            ordering = order
        else:
            ordering = cls(tuple(int(v) for v in order))
        if len(ordering) != p:
            raise ValidationException("order", f"expected {p} vertices, got {len(ordering)}")
        return ordering

    @cached_property
    def position(self) -> Dict[VertexId, int]:
        return {v: i for i, v in enumerate(self.order)}

    def sorted(self, vertices: Iterable[VertexId]) -> List[VertexId]:
        return sorted(vertices, key=self.position.__getitem__)

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.order)


class SeparationSets:
    """Symmetric map from removed pairs to the set that separated them."""

    def __init__(self):
        self._sets: Dict[Edge, FrozenSet[VertexId]] = {}

    def record(self, u: VertexId, v: VertexId, S: Iterable[VertexId]) -> None:
        self._sets[pair_key(u, v)] = frozenset(S)

    def get(self, u: VertexId, v: VertexId) -> Optional[FrozenSet[VertexId]]:
        return self._sets.get(pair_key(u, v))

    def require(self, u: VertexId, v: VertexId) -> FrozenSet[VertexId]:
        S = self.get(u, v)
        if S is None:
            raise MissingSepsetException(u, v)
        return S

    def __contains__(self, pair) -> bool:
        u, v = pair
        return pair_key(u, v) in self._sets

    def __len__(self) -> int:
        return len(self._sets)

    def items(self):
        return sorted(self._sets.items())

    def as_dict(self) -> Dict[Edge, FrozenSet[VertexId]]:
        return dict(self._sets)


@dataclass(frozen=True)
class TraceRow:
    level: int
    u: VertexId
    v: VertexId
    adjacency: FrozenSet[VertexId]
    S: Optional[FrozenSet[VertexId]]
    removed: bool


@dataclass
class SkeletonResult:
    H: MixedGraph
    sepsets: SeparationSets
    order: VariableOrdering
    mode: str
    trace: List[TraceRow] = field(default_factory=list)
    ci_queries: int = 0
    max_level: int = 0
    tests_per_level: Dict[int, int] = field(default_factory=dict)
    runtime_ms: float = 0.0


def ci_test_bound(n: int, k: int) -> int:
    """Worst-case number of independence tests for n variables and maximum degree k."""
    if n < 2:
        return 0
    return 2 * comb(n, 2) * sum(comb(n - 2, i) for i in range(k + 1))


def _existing_pairs(
    adjacent: Sequence[Set[VertexId]], order: VariableOrdering
) -> Iterator[Tuple[VertexId, VertexId]]:
    """Ordered pairs whose edge is present when the pair is reached."""
    for u in order:
        for v in order:
            if v in adjacent[u]:
                yield u, v


def _eligible(a_H: Sequence[Set[VertexId]], u: VertexId, v: VertexId, i: int) -> bool:
    return len(a_H[u]) - (1 if v in a_H[u] else 0) >= i


def enumerate_pairs(
    H: Sequence[Set[VertexId]],
    a_H: Sequence[Set[VertexId]],
    order: VariableOrdering,
    i: int,
) -> Iterator[Tuple[VertexId, VertexId]]:
    """Eligible ordered pairs at level i: u by position in order, then v by position.

    Args:
        H: live adjacency of the working graph; pairs whose edge is gone are skipped
        a_H: adjacency used for eligibility (H itself, or a level snapshot)
        order: the variable ordering
        i: conditioning-set size
    """
    for u, v in _existing_pairs(H, order):
        if _eligible(a_H, u, v, i):
            yield u, v


def enumerate_subsets(
    base: Iterable[VertexId], i: int, order: VariableOrdering
) -> Iterator[FrozenSet[VertexId]]:
    """All i-subsets of base in combinatorial order of their positions in order."""
    for subset in combinations(order.sorted(base), i):
        yield frozenset(subset)


def _query(oracle: CIOracle, u: VertexId, v: VertexId, S: FrozenSet[VertexId]) -> bool:
    try:
        return oracle.query(u, v, S).independent
    except OracleQueryException:
        raise
    except BaseAppException as e:
        raise OracleQueryException(u, v, S, details=e.message) from e


def _first_separator(
    oracle: CIOracle, u: VertexId, v: VertexId, base: Iterable[VertexId], i: int, order
) -> Optional[FrozenSet[VertexId]]:
    for S in enumerate_subsets(base, i, order):
        if _query(oracle, u, v, S):
            return S
    return None


def learn_skeleton(
    oracle: CIOracle,
    order: "Optional[Sequence[VertexId] | VariableOrdering]" = None,
    mode: SkeletonMode = "original",
    trace: bool = False,
    n_jobs: int = 1,
) -> SkeletonResult:
    """Recover the skeleton and the separating sets of removed edges.

    Args:
        oracle: independence backend covering all vertices
        order: variable ordering (identity when omitted)
        mode: ``original`` or ``stable``
        trace: keep one row per visited pair
        n_jobs: worker threads; above 1 only the stable mode evaluates pairs in parallel

    Returns:
        SkeletonResult: undirected graph H, sepsets, trace and query counters

    Raises:
        OracleQueryException: a query failed; names (u, v, S)
    """
    if mode not in SKELETON_MODES:
        raise ValidationException("mode", f"unknown skeleton mode {mode!r}")
    p = oracle.p
    ordering = VariableOrdering.coerce(order, p)
    started = time.perf_counter()
    queries_before = oracle.test_count

    start = MixedGraph.complete(p)
    adjacent: List[Set[VertexId]] = [set(start.adjacent(v)) for v in range(p)]
    sepsets = SeparationSets()
    result = SkeletonResult(H=start, sepsets=sepsets, order=ordering, mode=mode)
    parallel = mode == "stable" and n_jobs > 1

    logger.info(f"Skeleton search started: p={p}, mode={mode}, parallel={parallel}")
    for i in range(max(p - 1, 0)):
        a_H = [frozenset(a) for a in adjacent] if mode == "stable" else adjacent
        if not any(_eligible(a_H, u, v, i) for u, v in _existing_pairs(adjacent, ordering)):
            break
        level_before = oracle.test_count
        removed = (
            _run_level_parallel(oracle, adjacent, a_H, ordering, i, result, n_jobs)
            if parallel
            else _run_level(oracle, adjacent, a_H, ordering, i, result, trace)
        )
        result.max_level = i
        result.tests_per_level[i] = oracle.test_count - level_before
        logger.info(
            f"Level {i}: removed {removed} edges with {result.tests_per_level[i]} tests"
        )
        if parallel and not trace:
            result.trace.clear()

    edges = {pair_key(u, v) for u in range(p) for v in adjacent[u]}
    result.H = MixedGraph(p, undirected=edges)
    result.ci_queries = oracle.test_count - queries_before
    result.runtime_ms = (time.perf_counter() - started) * 1000.0
    logger.info(
        f"Skeleton search finished: {len(edges)} edges, {result.ci_queries} tests, "
        f"max level {result.max_level}"
    )
    return result


def _remove(adjacent, result: SkeletonResult, u, v, S) -> None:
    adjacent[u].discard(v)
    adjacent[v].discard(u)
    result.sepsets.record(u, v, S)


def _run_level(oracle, adjacent, a_H, order, i, result: SkeletonResult, trace: bool) -> int:
    removed = 0
    for u, v in _existing_pairs(adjacent, order):
        base = a_H[u] - {v}
        if len(base) < i:
            if trace:
                result.trace.append(TraceRow(i, u, v, frozenset(a_H[u]), None, False))
            continue
        S = _first_separator(oracle, u, v, base, i, order)
        if trace:
            result.trace.append(TraceRow(i, u, v, frozenset(a_H[u]), S, S is not None))
        if S is not None:
            _remove(adjacent, result, u, v, S)
            logger.debug(f"removed {u}-{v} given {sorted(S)}")
            removed += 1
    return removed


def _run_level_parallel(oracle, adjacent, a_H, order, i, result: SkeletonResult, n_jobs) -> int:
    """Evaluate every eligible pair against the snapshot, then commit in pair order."""
    pairs = list(_existing_pairs(adjacent, order))
    eligible = [(u, v) for u, v in pairs if _eligible(a_H, u, v, i)]
    found = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_first_separator)(oracle, u, v, a_H[u] - {v}, i, order) for u, v in eligible
    )
    separator = dict(zip(eligible, found))

    removed = 0
    for u, v in pairs:
        if v not in adjacent[u]:
            continue
        if (u, v) not in separator:
            result.trace.append(TraceRow(i, u, v, frozenset(a_H[u]), None, False))
            continue
        S = separator[(u, v)]
        result.trace.append(TraceRow(i, u, v, frozenset(a_H[u]), S, S is not None))
        if S is not None:
            _remove(adjacent, result, u, v, S)
            removed += 1
    return removed


def _format_set(vertices: Optional[Iterable[VertexId]], order, labels) -> str:
    if vertices is None:
        return ""
    name = (lambda v: labels[v]) if labels is not None else str
    return "{" + ",".join(name(v) for v in order.sorted(vertices)) + "}"


def trace_frame(result: SkeletonResult, labels: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Trace as a table with columns level, u, v, ad_H(u), S, removed."""
    name = (lambda v: labels[v]) if labels is not None else str
    rows = [
        {
            "level": row.level,
            "u": name(row.u),
            "v": name(row.v),
            "ad_H(u)": _format_set(row.adjacency, result.order, labels),
            "S": _format_set(row.S, result.order, labels),
            "removed": row.removed,
        }
        for row in result.trace
    ]
    return pd.DataFrame(rows, columns=["level", "u", "v", "ad_H(u)", "S", "removed"])


def write_trace_csv(
    result: SkeletonResult, path: Path, labels: Optional[Sequence[str]] = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    trace_frame(result, labels).to_csv(path, index=False)
    logger.info(f"Trace with {len(result.trace)} rows written to {path}")
    return path

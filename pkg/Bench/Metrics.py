"""Skeleton recovery rates and structural Hamming distance."""

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional, Union

try:
    from Algorithms.Complex import Pattern
    from Graph.MixedGraph import MixedGraph, VertexId
    from utils.exceptions import VertexMismatchException
except ImportError:
    from ..Algorithms.Complex import Pattern
    from ..Graph.MixedGraph import MixedGraph, VertexId
    from ..utils.exceptions import VertexMismatchException


@dataclass(frozen=True)
class SkeletonScore:
    tp: int
    fp: int
    tn: int
    fn: int
    tpr: float
    fpr: float
    tdr: float
    acc: float
    # False when no edge was learned and TDR took its conventional value
    tdr_defined: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def score_skeleton(learned: MixedGraph, truth: MixedGraph) -> SkeletonScore:
    """Compare adjacencies of learned against those of truth.

    Raises:
        VertexMismatchException: the graphs have different vertex counts
    """
    if learned.p != truth.p:
        raise VertexMismatchException(learned.p, truth.p)
    learned_pairs = learned.adjacency_pairs()
    true_pairs = truth.adjacency_pairs()
    total = truth.p * (truth.p - 1) // 2

    tp = len(learned_pairs & true_pairs)
    fp = len(learned_pairs - true_pairs)
    fn = len(true_pairs) - tp
    tn = total - tp - fp - fn

    tpr = tp / (tp + fn) if tp + fn else 1.0
    fpr = fp / (fp + tn) if fp + tn else 0.0
    if tp + fp:
        tdr, tdr_defined = tp / (tp + fp), True
    else:
        tdr, tdr_defined = (1.0 if not true_pairs else 0.0), False
    acc = (tp + tn) / total if total else 1.0
    return SkeletonScore(tp, fp, tn, fn, tpr, fpr, tdr, acc, tdr_defined)


def _mark(g: MixedGraph, u: VertexId, v: VertexId) -> Optional[str]:
    if g.has_directed(u, v):
        return "->"
    if g.has_directed(v, u):
        return "<-"
    if g.has_undirected(u, v):
        return "--"
    return None


def shd(learned: Union[Pattern, MixedGraph], truth: Union[Pattern, MixedGraph]) -> int:
    """Pairs whose adjacency or edge mark differs; one unit per pair.

    Raises:
        VertexMismatchException: the graphs have different vertex counts
    """
    left = learned.graph if isinstance(learned, Pattern) else learned
    right = truth.graph if isinstance(truth, Pattern) else truth
    if left.p != right.p:
        raise VertexMismatchException(left.p, right.p)
    return sum(
        1 for u, v in combinations(range(left.p), 2) if _mark(left, u, v) != _mark(right, u, v)
    )

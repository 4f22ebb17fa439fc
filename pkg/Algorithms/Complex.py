"""Complex-arrow recovery on a learned skeleton, pattern extraction, and the
conservative / majority-rule ambiguity variants."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Literal, Set, Tuple

from pydantic import BaseModel, Field, model_validator

try:
    from Algorithms.Skeleton import SkeletonResult, VariableOrdering, enumerate_subsets
    from CITest.Oracle import CIOracle
    from Graph.MixedGraph import (
        Edge,
        MixedGraph,
        VertexId,
        complex_arrows,
        find_complex_path,
        pair_key,
    )
    from utils.exceptions import EmptyFamilyException
    from utils.logger import get_logger
except ImportError:
    from .Skeleton import SkeletonResult, VariableOrdering, enumerate_subsets
    from ..CITest.Oracle import CIOracle
    from ..Graph.MixedGraph import (
        Edge,
        MixedGraph,
        VertexId,
        complex_arrows,
        find_complex_path,
        pair_key,
    )
    from ..utils.exceptions import EmptyFamilyException
    from ..utils.logger import get_logger

logger = get_logger()

Decision = Literal["orient", "keep", "ambiguous"]


@dataclass(frozen=True)
class Pattern:
    """Skeleton plus complex arrows, with the edges left ambiguous by CPC/MPC."""

    graph: MixedGraph
    labeled_arrows: FrozenSet[Edge] = frozenset()
    ambiguous_edges: FrozenSet[Edge] = frozenset()

    @property
    def p(self) -> int:
        return self.graph.p


class AmbiguityPolicy(BaseModel):
    """How separating-set disagreement is resolved when orienting u - w.

    Thresholds are percentages of the separating-set family; ``conservative`` is the
    majority rule with alpha_pct=0 and beta_pct=100.
    """

    kind: Literal["plain", "conservative", "majority"] = "plain"
    alpha_pct: float = Field(default=0.0, ge=0.0, le=100.0)
    beta_pct: float = Field(default=100.0, ge=0.0, le=100.0)

    @model_validator(mode="after")
    def _check_thresholds(self):
        if self.kind == "conservative":
            self.alpha_pct, self.beta_pct = 0.0, 100.0
        if self.alpha_pct > self.beta_pct:
            raise ValueError(f"alpha_pct {self.alpha_pct} exceeds beta_pct {self.beta_pct}")
        return self

    @classmethod
    def conservative(cls) -> "AmbiguityPolicy":
        return cls(kind="conservative")

    @classmethod
    def majority(cls, alpha_pct: float, beta_pct: float) -> "AmbiguityPolicy":
        return cls(kind="majority", alpha_pct=alpha_pct, beta_pct=beta_pct)

    def decide(self, f: Fraction) -> Decision:
        """Decision for a dependent fraction f; both thresholds are inclusive and
        orientation wins when f meets both."""
        pct = f * 100
        if pct >= Fraction(str(self.beta_pct)):
            return "orient"
        if pct <= Fraction(str(self.alpha_pct)):
            return "keep"
        return "ambiguous"


def _nonadjacent_pairs(H: MixedGraph, order: VariableOrdering) -> Iterator[Tuple[VertexId, VertexId]]:
    for a, b in combinations(order.order, 2):
        if not H.is_adjacent(a, b):
            yield a, b


def recover_complex_arrows(result: SkeletonResult, oracle: CIOracle) -> MixedGraph:
    """Orient u - w as u -> w whenever u and v are dependent given S_uv plus w.

    Raises:
        MissingSepsetException: a nonadjacent pair has no separating set
    """
    H, order = result.H, result.order
    directed: Set[Edge] = set()
    undirected: Set[Edge] = set(H.undirected)

    for a, b in _nonadjacent_pairs(H, order):
        S = result.sepsets.require(a, b)
        for u, v in ((a, b), (b, a)):
            for w in order.sorted(H.adjacent(u)):
                if pair_key(u, w) not in undirected or w in S:
                    continue
                if not oracle.query(u, v, S | {w}).independent:
                    undirected.discard(pair_key(u, w))
                    directed.add((u, w))
                    logger.debug(f"oriented {u}->{w} from pair ({u},{v})")

    logger.info(f"Complex recovery oriented {len(directed)} edges")
    return MixedGraph(H.p, directed, undirected, labels=H.labels)


def extract_pattern(
    H_star: MixedGraph, ambiguous_edges: FrozenSet[Edge] = frozenset()
) -> Pattern:
    """Keep the arrows that head a candidate complex and undirect the rest."""
    arrows = sorted(H_star.directed)
    labeled: Set[Edge] = set()
    for (u1, w1), (u2, w2) in combinations(arrows, 2):
        if find_complex_path(H_star, u1, w1, u2, w2) is not None:
            labeled.update({(u1, w1), (u2, w2)})

    unlabeled = [arrow for arrow in arrows if arrow not in labeled]
    if unlabeled:
        logger.debug(f"undirecting {len(unlabeled)} unlabeled arrows: {unlabeled}")
    graph = MixedGraph(
        H_star.p,
        directed=labeled,
        undirected=set(H_star.undirected) | {pair_key(u, w) for u, w in unlabeled},
        labels=H_star.labels,
    )
    return Pattern(graph, frozenset(labeled), frozenset(ambiguous_edges))


def separating_family(
    oracle: CIOracle,
    H: MixedGraph,
    u: VertexId,
    v: VertexId,
    max_size: int,
    order: VariableOrdering,
) -> List[FrozenSet[VertexId]]:
    """Every subset of ad_H(u) minus v, up to max_size, that separates u from v."""
    base = H.adjacent(u) - {v}
    family = []
    for size in range(min(max_size, len(base)) + 1):
        family.extend(S for S in enumerate_subsets(base, size, order) if oracle.query(u, v, S).independent)
    return family


def label_ambiguity(
    result: SkeletonResult, oracle: CIOracle, policy: AmbiguityPolicy
) -> Pattern:
    """Orient by voting over the separating-set family of each nonadjacent pair.

    The family of (u, v) is the separating subsets of ad_H(u) minus v up to one past the
    deepest level. A side whose family is empty casts no vote.
    Decisions are taken against the learned skeleton and committed together; an edge
    gets ambiguous when any vote on it is ambiguous or when both of its directions win.

    Raises:
        EmptyFamilyException: a nonadjacent pair has no recorded separating set and no
            separating subset on either side
    """
    if policy.kind == "plain":
        return extract_pattern(recover_complex_arrows(result, oracle))

    H, order = result.H, result.order
    cap = result.max_level + 1
    families: Dict[Tuple[VertexId, VertexId], List[FrozenSet[VertexId]]] = {}

    def family_of(x: VertexId, y: VertexId) -> List[FrozenSet[VertexId]]:
        if (x, y) not in families:
            families[(x, y)] = separating_family(oracle, H, x, y, cap, order)
        return families[(x, y)]

    votes: Dict[Edge, Set[Decision]] = {}
    for a, b in _nonadjacent_pairs(H, order):
        if result.sepsets.get(a, b) is None and not (family_of(a, b) or family_of(b, a)):
            raise EmptyFamilyException(a, b)
        for u, v in ((a, b), (b, a)):
            family = family_of(u, v)
            if not family:
                continue
            for w in order.sorted(H.neighbors(u)):
                dependent = sum(
                    1 for S in family if w not in S and not oracle.query(u, v, S | {w}).independent
                )
                votes.setdefault((u, w), set()).add(policy.decide(Fraction(dependent, len(family))))

    directed: Set[Edge] = set()
    ambiguous: Set[Edge] = set()
    for x, y in sorted(H.undirected):
        forward = votes.get((x, y), set())
        backward = votes.get((y, x), set())
        if "ambiguous" in forward | backward or ("orient" in forward and "orient" in backward):
            ambiguous.add((x, y))
        elif "orient" in forward:
            directed.add((x, y))
        elif "orient" in backward:
            directed.add((y, x))

    if ambiguous:
        logger.info(f"{policy.kind} policy left {len(ambiguous)} ambiguous edges")
    undirected = set(H.undirected) - {pair_key(x, y) for x, y in directed}
    H_star = MixedGraph(H.p, directed, undirected, labels=H.labels)
    return extract_pattern(H_star, frozenset(ambiguous))


def true_pattern(g: MixedGraph) -> Pattern:
    """Pattern of a known chain graph: its skeleton plus its complex arrows."""
    arrows = complex_arrows(g)
    undirected = g.adjacency_pairs() - {pair_key(u, v) for u, v in arrows}
    return Pattern(MixedGraph(g.p, arrows, undirected, labels=g.labels), arrows)

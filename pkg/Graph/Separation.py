"""c-separation in chain graphs and minimal separators for vertex pairs."""

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Set

import networkx as nx

try:
    from Graph.MixedGraph import (
        MixedGraph,
        VertexId,
        ancestral_set,
        induced_subgraph,
        moral_graph,
    )
    from utils.exceptions import AdjacentPairException, InvalidQueryException
    from utils.logger import get_logger
except ImportError:
    from .MixedGraph import MixedGraph, VertexId, ancestral_set, induced_subgraph, moral_graph
    from ..utils.exceptions import AdjacentPairException, InvalidQueryException
    from ..utils.logger import get_logger

logger = get_logger()


@dataclass(frozen=True)
class SeparationQuery:
    A: FrozenSet[VertexId]
    B: FrozenSet[VertexId]
    S: FrozenSet[VertexId] = frozenset()

    @classmethod
    def of(
        cls, A: Iterable[VertexId], B: Iterable[VertexId], S: Iterable[VertexId] = ()
    ) -> "SeparationQuery":
        return cls(frozenset(A), frozenset(B), frozenset(S))

    def validate(self, p: int) -> None:
        if not self.A or not self.B:
            raise InvalidQueryException("A and B must be nonempty")
        for v in self.A | self.B | self.S:
            if not 0 <= v < p:
                raise InvalidQueryException(f"vertex {v} outside [0,{p})")
        if self.A & self.B or self.A & self.S or self.B & self.S:
            raise InvalidQueryException("A, B and S must be pairwise disjoint")


def _moral_nx(g: MixedGraph, W: Iterable[VertexId]):
    """Moral graph of the subgraph induced by W, relabelled back to the ids of g."""
    sub, kept = induced_subgraph(g, W)
    moral = moral_graph(sub)
    ug = nx.Graph()
    ug.add_nodes_from(kept)
    ug.add_edges_from((kept[u], kept[v]) for u, v in moral.undirected)
    return ug


def c_separated(g: MixedGraph, q: SeparationQuery) -> bool:
    """Whether S separates A from B in the moral graph of the smallest ancestral set
    containing A, B and S.

    Raises:
        InvalidQueryException: overlapping or out-of-range vertex sets
        NotAChainGraphException: g has a partially directed cycle
    """
    q.validate(g.p)
    ug = _moral_nx(g, ancestral_set(g, q.A | q.B | q.S))
    ug.remove_nodes_from(q.S)

    reached: Set[VertexId] = set()
    for a in sorted(q.A):
        if a in reached:
            continue
        component = nx.node_connected_component(ug, a)
        if component & q.B:
            return False
        reached |= component
    return True


def _first_hits(ug: nx.Graph, start: VertexId, targets: FrozenSet[VertexId]) -> Set[VertexId]:
    """BFS from start that stops at, and collects, the target vertices it meets."""
    hits = set()
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in sorted(ug.neighbors(x)):
            if y in seen:
                continue
            seen.add(y)
            if y in targets:
                hits.add(y)
            else:
                queue.append(y)
    return hits


def minimal_separator(g: MixedGraph, a: VertexId, b: VertexId) -> FrozenSet[VertexId]:
    """A minimal set Z with a and b c-separated given Z.

    Works in the moral graph of An({a, b}): Z' = ne(a), then Z'' = the Z' vertices met
    first by a BFS from a, then Z = the Z'' vertices met first by a BFS from b.

    Raises:
        InvalidQueryException: a == b or out-of-range vertices
        AdjacentPairException: a and b are adjacent in g
    """
    SeparationQuery.of({a}, {b}).validate(g.p)
    if g.is_adjacent(a, b):
        raise AdjacentPairException(a, b)

    ug = _moral_nx(g, ancestral_set(g, {a, b}))
    z1 = frozenset(ug.neighbors(a)) - {b}
    z2 = frozenset(_first_hits(ug, a, z1))
    z = frozenset(_first_hits(ug, b, z2))
    logger.debug(f"minimal separator of ({a},{b}): {sorted(z)}")
    return z

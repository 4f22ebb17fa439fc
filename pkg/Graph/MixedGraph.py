"""Mixed graphs with directed and undirected edges, and the chain-graph primitives
the structure-learning algorithms are built on.

Vertices are dense integer ids ``0..p-1``; optional string labels are carried for I/O
only. Graph values are immutable: every edit returns a new graph.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

try:
    from utils.exceptions import InvalidGraphException, NotAChainGraphException
    from utils.logger import get_logger
except ImportError:
    from ..utils.exceptions import InvalidGraphException, NotAChainGraphException
    from ..utils.logger import get_logger

logger = get_logger()

VertexId = int
Edge = Tuple[VertexId, VertexId]

DIRECTED = "->"
UNDIRECTED = "--"


def pair_key(u: VertexId, v: VertexId) -> Edge:
    """Canonical key of an unordered vertex pair."""
    return (u, v) if u < v else (v, u)


class MixedGraph:
    """Vertex count plus a set of directed and a set of undirected edges."""

    def __init__(
        self,
        p: int,
        directed: Iterable[Edge] = (),
        undirected: Iterable[Edge] = (),
        labels: Optional[Sequence[str]] = None,
    ):
        if p < 0:
            raise InvalidGraphException(f"vertex count must be non-negative, got {p}")
        self._p = p
        directed = frozenset((int(u), int(v)) for u, v in directed)
        undirected = frozenset(pair_key(int(u), int(v)) for u, v in undirected)

        for u, v in directed | undirected:
            if not (0 <= u < p and 0 <= v < p):
                raise InvalidGraphException(f"edge ({u},{v}) outside vertex range [0,{p})")
            if u == v:
                raise InvalidGraphException(f"self-loop on vertex {u}")
        for u, v in directed:
            if (v, u) in directed:
                raise InvalidGraphException(f"both {u}->{v} and {v}->{u} present")
            if pair_key(u, v) in undirected:
                raise InvalidGraphException(f"pair ({u},{v}) is both directed and undirected")

        if labels is not None:
            labels = tuple(str(label) for label in labels)
            if len(labels) != p:
                raise InvalidGraphException(f"expected {p} labels, got {len(labels)}")
            if len(set(labels)) != p:
                raise InvalidGraphException("vertex labels must be unique")

        self._directed = directed
        self._undirected = undirected
        self._labels = labels

    # construction helpers

    @classmethod
    def empty(cls, p: int, labels: Optional[Sequence[str]] = None) -> "MixedGraph":
        return cls(p, labels=labels)

    @classmethod
    def complete(cls, p: int, labels: Optional[Sequence[str]] = None) -> "MixedGraph":
        """Complete undirected graph on p vertices."""
        return cls(p, undirected=combinations(range(p), 2), labels=labels)

    @classmethod
    def from_labels(
        cls,
        labels: Sequence[str],
        directed: Iterable[Tuple[str, str]] = (),
        undirected: Iterable[Tuple[str, str]] = (),
    ) -> "MixedGraph":
        """Build a graph whose edges are given by vertex label."""
        index = {label: i for i, label in enumerate(labels)}
        try:
            return cls(
                len(labels),
                directed=[(index[u], index[v]) for u, v in directed],
                undirected=[(index[u], index[v]) for u, v in undirected],
                labels=labels,
            )
        except KeyError as e:
            raise InvalidGraphException(f"unknown vertex label {e.args[0]!r}") from e

    # basic accessors

    @property
    def p(self) -> int:
        return self._p

    @property
    def directed(self) -> FrozenSet[Edge]:
        return self._directed

    @property
    def undirected(self) -> FrozenSet[Edge]:
        return self._undirected

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self._labels

    @property
    def vertices(self) -> range:
        return range(self._p)

    def label(self, v: VertexId) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    def vertex(self, label: str) -> VertexId:
        if self._labels is None:
            return int(label)
        try:
            return self._labels.index(label)
        except ValueError as e:
            raise InvalidGraphException(f"unknown vertex label {label!r}") from e

    def with_labels(self, labels: Optional[Sequence[str]]) -> "MixedGraph":
        return MixedGraph(self._p, self._directed, self._undirected, labels=labels)

    # adjacency (derived once per graph value)

    @cached_property
    def _adjacency(self) -> Dict[str, Tuple[FrozenSet[VertexId], ...]]:
        parents = [set() for _ in self.vertices]
        children = [set() for _ in self.vertices]
        neighbors = [set() for _ in self.vertices]
        for u, v in self._directed:
            children[u].add(v)
            parents[v].add(u)
        for u, v in self._undirected:
            neighbors[u].add(v)
            neighbors[v].add(u)
        freeze = lambda sets: tuple(frozenset(s) for s in sets)  # noqa: E731
        return {
            "parents": freeze(parents),
            "children": freeze(children),
            "neighbors": freeze(neighbors),
            "adjacent": tuple(
                frozenset(parents[v] | children[v] | neighbors[v]) for v in self.vertices
            ),
        }

    def parents(self, v: VertexId) -> FrozenSet[VertexId]:
        return self._adjacency["parents"][v]

    def children(self, v: VertexId) -> FrozenSet[VertexId]:
        return self._adjacency["children"][v]

    def neighbors(self, v: VertexId) -> FrozenSet[VertexId]:
        """Vertices joined to v by an undirected edge."""
        return self._adjacency["neighbors"][v]

    def adjacent(self, v: VertexId) -> FrozenSet[VertexId]:
        """Vertices joined to v by an edge of any kind."""
        return self._adjacency["adjacent"][v]

    def boundary(self, v: VertexId) -> FrozenSet[VertexId]:
        """Parents and neighbors of v."""
        return self.parents(v) | self.neighbors(v)

    def degree(self, v: VertexId) -> int:
        return len(self.adjacent(v))

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def is_adjacent(self, u: VertexId, v: VertexId) -> bool:
        return v in self.adjacent(u)

    def has_directed(self, u: VertexId, v: VertexId) -> bool:
        return (u, v) in self._directed

    def has_undirected(self, u: VertexId, v: VertexId) -> bool:
        return pair_key(u, v) in self._undirected

    def edges(self) -> List[Tuple[VertexId, VertexId, str]]:
        """All edges, sorted lexicographically by endpoints."""
        rows = [(u, v, DIRECTED) for u, v in self._directed]
        rows += [(u, v, UNDIRECTED) for u, v in self._undirected]
        return sorted(rows)

    def adjacency_pairs(self) -> FrozenSet[Edge]:
        """Unordered adjacent pairs regardless of edge kind."""
        return frozenset(pair_key(u, v) for u, v in self._directed) | self._undirected

    @property
    def n_edges(self) -> int:
        return len(self._directed) + len(self._undirected)

    # edits return new graph versions

    def without_edge(self, u: VertexId, v: VertexId) -> "MixedGraph":
        key = pair_key(u, v)
        return MixedGraph(
            self._p,
            self._directed - {(u, v), (v, u)},
            self._undirected - {key},
            labels=self._labels,
        )

    def oriented(self, u: VertexId, v: VertexId) -> "MixedGraph":
        """Replace the undirected edge u--v by u->v."""
        if not self.has_undirected(u, v):
            raise InvalidGraphException(f"no undirected edge {u}--{v} to orient")
        return MixedGraph(
            self._p,
            self._directed | {(u, v)},
            self._undirected - {pair_key(u, v)},
            labels=self._labels,
        )

    # value semantics

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (
            self._p == other._p
            and self._directed == other._directed
            and self._undirected == other._undirected
        )

    def __hash__(self) -> int:
        return hash((self._p, self._directed, self._undirected))

    def __repr__(self) -> str:
        body = ", ".join(f"{self.label(u)}{kind}{self.label(v)}" for u, v, kind in self.edges())
        return f"MixedGraph(p={self._p}, [{body}])"

    def to_dict(self) -> dict:
        return {
            "p": self._p,
            "directed": sorted(list(e) for e in self._directed),
            "undirected": sorted(list(e) for e in self._undirected),
            "labels": list(self._labels) if self._labels is not None else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MixedGraph":
        return cls(
            data["p"],
            directed=[tuple(e) for e in data.get("directed", [])],
            undirected=[tuple(e) for e in data.get("undirected", [])],
            labels=data.get("labels"),
        )


@dataclass(frozen=True)
class ChainComponentPartition:
    """Chain components indexed by their smallest member."""

    components: Tuple[FrozenSet[VertexId], ...]
    component_of: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.components)


def _undirected_components(g: MixedGraph) -> ChainComponentPartition:
    ug = nx.Graph()
    ug.add_nodes_from(g.vertices)
    ug.add_edges_from(g.undirected)
    components = sorted((frozenset(c) for c in nx.connected_components(ug)), key=min)
    component_of = [0] * g.p
    for index, members in enumerate(components):
        for v in members:
            component_of[v] = index
    return ChainComponentPartition(tuple(components), tuple(component_of))


def _component_digraph(g: MixedGraph, partition: ChainComponentPartition) -> Optional[nx.DiGraph]:
    """Condensed digraph over chain components, or None if an arrow stays inside one."""
    dg = nx.DiGraph()
    dg.add_nodes_from(range(len(partition)))
    for u, v in g.directed:
        cu, cv = partition.component_of[u], partition.component_of[v]
        if cu == cv:
            return None
        dg.add_edge(cu, cv)
    return dg


def is_chain_graph(g: MixedGraph) -> bool:
    """True iff g has no partially directed cycle.

    Chain components are contracted; g is a chain graph exactly when no arrow joins two
    vertices of one component and the component digraph is acyclic.
    """
    dg = _component_digraph(g, _undirected_components(g))
    return dg is not None and nx.is_directed_acyclic_graph(dg)


def chain_components(g: MixedGraph) -> ChainComponentPartition:
    partition = _undirected_components(g)
    dg = _component_digraph(g, partition)
    if dg is None or not nx.is_directed_acyclic_graph(dg):
        raise NotAChainGraphException("chain_components")
    return partition


def component_order(g: MixedGraph) -> List[FrozenSet[VertexId]]:
    """Chain components in a topological order (ties by smallest member)."""
    partition = chain_components(g)
    dg = _component_digraph(g, partition)
    return [partition.components[i] for i in nx.lexicographical_topological_sort(dg)]


def _require_chain_graph(g: MixedGraph, operation: str) -> None:
    if not is_chain_graph(g):
        raise NotAChainGraphException(operation)


def moral_graph(g: MixedGraph) -> MixedGraph:
    """Undirected moral graph: every adjacency of g plus every pair of vertices having
    children in a common chain component."""
    partition = chain_components(g)
    edges = set(g.adjacency_pairs())
    for members in partition.components:
        parents = set()
        for v in members:
            parents |= g.parents(v)
        edges.update(pair_key(a, b) for a, b in combinations(sorted(parents), 2))
    return MixedGraph(g.p, undirected=edges, labels=g.labels)


def ancestral_set(g: MixedGraph, A: Iterable[VertexId]) -> FrozenSet[VertexId]:
    """Smallest superset of A closed under taking boundaries."""
    _require_chain_graph(g, "ancestral_set")
    closure = set(A)
    stack = list(closure)
    while stack:
        v = stack.pop()
        for b in g.boundary(v):
            if b not in closure:
                closure.add(b)
                stack.append(b)
    return frozenset(closure)


def skeleton(g: MixedGraph) -> MixedGraph:
    return MixedGraph(g.p, undirected=g.adjacency_pairs(), labels=g.labels)


def induced_subgraph(
    g: MixedGraph, W: Iterable[VertexId]
) -> Tuple[MixedGraph, Tuple[VertexId, ...]]:
    """Subgraph on W with dense ids; the second value maps new ids to old ids."""
    kept = tuple(sorted(set(W)))
    new_id = {old: new for new, old in enumerate(kept)}
    directed = [(new_id[u], new_id[v]) for u, v in g.directed if u in new_id and v in new_id]
    undirected = [
        (new_id[u], new_id[v]) for u, v in g.undirected if u in new_id and v in new_id
    ]
    labels = [g.labels[v] for v in kept] if g.labels is not None else None
    return MixedGraph(len(kept), directed, undirected, labels=labels), kept


def find_complex_path(
    g: MixedGraph, u1: VertexId, w1: VertexId, u2: VertexId, w2: VertexId
) -> Optional[List[VertexId]]:
    """Shortest undirected path w1..w2 completing u1->w1 ... w2<-u2 into an induced
    (minimal) complex, or None.

    Path vertices other than w1 must be nonadjacent to u1, those other than w2
    nonadjacent to u2, and the tails must be distinct and nonadjacent.
    """
    if u1 == u2 or g.is_adjacent(u1, u2):
        return None
    if not (g.has_directed(u1, w1) and g.has_directed(u2, w2)):
        return None
    if w1 == w2:
        return [w1]
    if g.is_adjacent(u1, w2) or g.is_adjacent(u2, w1):
        return None

    blocked = g.adjacent(u1) | g.adjacent(u2) | {u1, u2}
    previous = {w1: None}
    queue = deque([w1])
    while queue:
        x = queue.popleft()
        for y in sorted(g.neighbors(x)):
            if y in previous:
                continue
            if y != w2 and y in blocked:
                continue
            previous[y] = x
            if y == w2:
                path = [y]
                while previous[path[-1]] is not None:
                    path.append(previous[path[-1]])
                return path[::-1]
            queue.append(y)
    return None


@dataclass(frozen=True)
class MinimalComplex:
    """Induced subgraph tail_a -> path[0] - ... - path[-1] <- tail_b."""

    tail_a: VertexId
    path: Tuple[VertexId, ...]
    tail_b: VertexId

    @property
    def arrows(self) -> FrozenSet[Edge]:
        return frozenset({(self.tail_a, self.path[0]), (self.tail_b, self.path[-1])})


def minimal_complexes(g: MixedGraph) -> List[MinimalComplex]:
    """Every pair of arrows of g that heads a minimal complex, one witness path each."""
    _require_chain_graph(g, "minimal_complexes")
    arrows = sorted(g.directed)
    found = []
    for (u1, w1), (u2, w2) in combinations(arrows, 2):
        path = find_complex_path(g, u1, w1, u2, w2)
        if path is not None:
            found.append(MinimalComplex(u1, tuple(path), u2))
    return found


def complex_arrows(g: MixedGraph) -> FrozenSet[Edge]:
    arrows = set()
    for cx in minimal_complexes(g):
        arrows |= cx.arrows
    return frozenset(arrows)


def markov_equivalent(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Same skeleton and same minimal complexes."""
    if g1.p != g2.p or g1.adjacency_pairs() != g2.adjacency_pairs():
        return False
    heads = lambda g: {cx.arrows for cx in minimal_complexes(g)}  # noqa: E731
    return heads(g1) == heads(g2)

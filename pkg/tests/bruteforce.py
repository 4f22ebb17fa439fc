"""Slow, definition-level reference implementations the library is checked against.

Nothing here goes through networkx or the library's search routines; every answer is
computed straight from the definitions on small graphs.
"""

from itertools import combinations
from typing import FrozenSet, Iterable, List, Set

import numpy as np

from Graph.MixedGraph import MixedGraph, pair_key
from Synth.Generator import GenSpec, random_chain_graph


def has_semi_directed_cycle(g: MixedGraph) -> bool:
    """Some arrow a->b can be closed into a cycle by steps along arrows or lines."""

    def steps(x):
        return g.children(x) | g.neighbors(x)

    for a, b in g.directed:
        seen, stack = {b}, [b]
        while stack:
            x = stack.pop()
            if x == a:
                return True
            for y in steps(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return False


def ancestral_fixpoint(g: MixedGraph, A: Iterable[int]) -> FrozenSet[int]:
    closure = set(A)
    while True:
        grown = closure | {b for v in closure for b in g.boundary(v)}
        if grown == closure:
            return frozenset(closure)
        closure = grown


def _line_components(g: MixedGraph, W: Set[int]) -> List[Set[int]]:
    left, components = set(W), []
    while left:
        start = left.pop()
        component, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in left:
                    left.discard(y)
                    component.add(y)
                    stack.append(y)
        components.append(component)
    return components


def moral_edges(g: MixedGraph, W: Iterable[int]) -> Set[tuple]:
    """Edges of the moral graph of the subgraph induced by W."""
    W = set(W)
    edges = {pair_key(u, v) for u, v in g.adjacency_pairs() if u in W and v in W}
    for component in _line_components(g, W):
        for x, y in combinations(sorted(W), 2):
            hits_x = any(x in g.parents(c) for c in component)
            hits_y = any(y in g.parents(c) for c in component)
            if hits_x and hits_y:
                edges.add(pair_key(x, y))
    return edges


def reachable(edges: Set[tuple], start: Iterable[int], blocked: Set[int]) -> Set[int]:
    neighbours = {}
    for u, v in edges:
        neighbours.setdefault(u, set()).add(v)
        neighbours.setdefault(v, set()).add(u)
    seen = set(start)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in neighbours.get(x, ()):
            if y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return seen


def c_separated_brute(g: MixedGraph, A, B, S) -> bool:
    A, B, S = set(A), set(B), set(S)
    W = ancestral_fixpoint(g, A | B | S)
    return not (reachable(moral_edges(g, W), A, S) & B)


def separates_minimally(g: MixedGraph, a: int, b: int, Z: FrozenSet[int]) -> bool:
    if not c_separated_brute(g, {a}, {b}, Z):
        return False
    return all(not c_separated_brute(g, {a}, {b}, Z - {z}) for z in Z)


def _induced_complex(g: MixedGraph, a: int, path: List[int], b: int) -> bool:
    inner = set(path)
    if any(g.is_adjacent(a, x) for x in inner - {path[0]}):
        return False
    if any(g.is_adjacent(b, x) for x in inner - {path[-1]}):
        return False
    for i, j in combinations(range(len(path)), 2):
        if j > i + 1 and g.is_adjacent(path[i], path[j]):
            return False
    return True


def _line_paths(g: MixedGraph, start: int, end: int):
    stack = [[start]]
    while stack:
        path = stack.pop()
        if path[-1] == end:
            yield path
            continue
        for y in g.neighbors(path[-1]):
            if y not in path:
                stack.append(path + [y])


def brute_pattern(g: MixedGraph) -> MixedGraph:
    """Skeleton of g plus every arrow that heads an induced complex found by
    enumerating all line paths."""
    arrows = set()
    for (a, w1), (b, w2) in combinations(sorted(g.directed), 2):
        if a == b or g.is_adjacent(a, b):
            continue
        if any(_induced_complex(g, a, path, b) for path in _line_paths(g, w1, w2)):
            arrows |= {(a, w1), (b, w2)}
    undirected = g.adjacency_pairs() - {pair_key(u, v) for u, v in arrows}
    return MixedGraph(g.p, arrows, undirected)


def random_graphs(count: int, p_max: int, N_max: float, seed: int, p_min: int = 2):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p = int(rng.integers(p_min, p_max + 1))
        N = float(rng.uniform(0.0, min(N_max, p - 1)))
        yield random_chain_graph(GenSpec(p=p, N=N, seed=int(rng.integers(2**31))))


def random_mixed_graph(p: int, rng: np.random.Generator, density: float = 0.5) -> MixedGraph:
    """Arbitrary mixed graph, chain graph or not."""
    directed, undirected = [], []
    for u, v in combinations(range(p), 2):
        if rng.random() >= density:
            continue
        kind = rng.integers(3)
        if kind == 0:
            undirected.append((u, v))
        elif kind == 1:
            directed.append((u, v))
        else:
            directed.append((v, u))
    return MixedGraph(p, directed, undirected)

"""Text format for mixed graphs.

Grammar (one statement per line, ``#`` starts a comment, blank lines ignored)::

    p <vertex-count>            first statement, required
    labels <l0> <l1> ...        optional, directly after the header
    <u> -> <v>                  directed edge
    <u> -- <v>                  undirected edge

Endpoints are labels when labels are known (inline or from a labels file with one
label per line), otherwise integer ids in [0, p).
"""

import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

try:
    from Algorithms.Complex import Pattern
    from Graph.MixedGraph import DIRECTED, UNDIRECTED, MixedGraph, pair_key
    from utils.exceptions import GraphFormatException
    from utils.logger import get_logger
except ImportError:
    from ..Algorithms.Complex import Pattern
    from ..Graph.MixedGraph import DIRECTED, UNDIRECTED, MixedGraph, pair_key
    from .exceptions import GraphFormatException
    from .logger import get_logger

logger = get_logger()


def _statements(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if tokens:
            rows.append((number, tokens))
    return rows


def parse_graph(text: str, labels: Optional[Sequence[str]] = None) -> MixedGraph:
    """Parse the text format.

    Raises:
        GraphFormatException: with the offending line number
    """
    rows = _statements(text)
    if not rows:
        raise GraphFormatException(1, "empty graph file, expected 'p <vertex-count>'")

    number, tokens = rows[0]
    if len(tokens) != 2 or tokens[0] != "p" or not tokens[1].isdigit():
        raise GraphFormatException(number, "expected header 'p <vertex-count>'")
    p = int(tokens[1])
    rows = rows[1:]

    if rows and rows[0][1][0] == "labels":
        number, tokens = rows[0]
        if labels is not None:
            raise GraphFormatException(number, "labels given both inline and by file")
        labels = tokens[1:]
        rows = rows[1:]
    if labels is not None:
        labels = list(labels)
        if len(labels) != p or len(set(labels)) != p:
            raise GraphFormatException(number, f"expected {p} distinct labels, got {labels}")
    index: Dict[str, int] = (
        {label: i for i, label in enumerate(labels)}
        if labels is not None
        else {str(i): i for i in range(p)}
    )

    directed, undirected = set(), set()
    seen: Dict[Tuple[int, int], int] = {}
    for number, tokens in rows:
        if len(tokens) != 3 or tokens[1] not in (DIRECTED, UNDIRECTED):
            raise GraphFormatException(number, f"expected '<u> -> <v>' or '<u> -- <v>', got {' '.join(tokens)!r}")
        try:
            u, v = index[tokens[0]], index[tokens[2]]
        except KeyError as e:
            raise GraphFormatException(number, f"unknown vertex {e.args[0]!r}") from e
        if u == v:
            raise GraphFormatException(number, f"self-loop on {tokens[0]}")
        key = pair_key(u, v)
        if key in seen:
            raise GraphFormatException(
                number, f"pair {tokens[0]},{tokens[2]} already has an edge (line {seen[key]})"
            )
        seen[key] = number
        if tokens[1] == DIRECTED:
            directed.add((u, v))
        else:
            undirected.add(key)
    return MixedGraph(p, directed, undirected, labels=labels)


def format_graph(g: MixedGraph) -> str:
    lines = [f"p {g.p}"]
    if g.labels is not None:
        lines.append("labels " + " ".join(g.labels))
    lines += [f"{g.label(u)} {kind} {g.label(v)}" for u, v, kind in g.edges()]
    return "\n".join(lines) + "\n"


def read_labels(path: Path) -> List[str]:
    return [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]


def read_graph(path: Path, labels_path: Optional[Path] = None) -> MixedGraph:
    labels = read_labels(labels_path) if labels_path else None
    g = parse_graph(Path(path).read_text(), labels=labels)
    logger.debug(f"Read graph with {g.p} vertices and {g.n_edges} edges from {path}")
    return g


def write_graph(g: MixedGraph, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(g))
    return path


def sidecar_path(path: Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".pattern.json")


def write_pattern(pattern: Pattern, path: Path) -> Tuple[Path, Path]:
    """Graph file plus a JSON sidecar listing labeled arrows and ambiguous edges."""
    graph_path = write_graph(pattern.graph, path)
    g = pattern.graph
    sidecar = {
        "labeled_arrows": [[g.label(u), g.label(v)] for u, v in sorted(pattern.labeled_arrows)],
        "ambiguous_edges": [[g.label(u), g.label(v)] for u, v in sorted(pattern.ambiguous_edges)],
    }
    side = sidecar_path(graph_path)
    side.write_text(json.dumps(sidecar, indent=2) + "\n")
    logger.info(f"Pattern written to {graph_path} (sidecar {side.name})")
    return graph_path, side


def read_pattern(path: Path, labels_path: Optional[Path] = None) -> Pattern:
    g = read_graph(path, labels_path)
    side = sidecar_path(path)
    if not side.exists():
        return Pattern(g, frozenset(g.directed))
    data = json.loads(side.read_text())
    arrows = frozenset((g.vertex(u), g.vertex(v)) for u, v in data.get("labeled_arrows", []))
    ambiguous = frozenset(
        pair_key(g.vertex(u), g.vertex(v)) for u, v in data.get("ambiguous_edges", [])
    )
    return Pattern(g, arrows, ambiguous)

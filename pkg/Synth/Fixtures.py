"""Small hand-checked graphs and scripted oracles with known learning outcomes.

``example1``: five-vertex DAG where two wrong answers make the original skeleton
search order dependent. ``example2``: DAG where a wrong answer makes the separating
set, and therefore the oriented arrows, order dependent. ``shared_head``: chain graph
whose complex-recovery output carries one arrow that pattern extraction must drop.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

try:
    from CITest.Oracle import ScriptedOracle
    from Graph.MixedGraph import MixedGraph
    from utils.exceptions import ValidationException
except ImportError:
    from ..CITest.Oracle import ScriptedOracle
    from ..Graph.MixedGraph import MixedGraph
    from ..utils.exceptions import ValidationException

LETTERS = ("a", "b", "c", "d", "e")


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: MixedGraph
    oracle_rules: Tuple[Tuple[str, str, Tuple[str, ...], bool], ...]
    orderings: Dict[str, Tuple[str, ...]]

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.graph.labels

    def oracle(self) -> ScriptedOracle:
        """A fresh scripted oracle (its query counter starts at zero)."""
        v = self.graph.vertex
        return ScriptedOracle.from_rules(
            self.graph,
            [(v(a), v(b), [v(s) for s in S], ind) for a, b, S, ind in self.oracle_rules],
        )

    def ordering(self, name: str) -> Tuple[int, ...]:
        return tuple(self.graph.vertex(label) for label in self.orderings[name])

    def ids(self, *labels: str):
        return frozenset(self.graph.vertex(label) for label in labels)


def example1() -> Fixture:
    graph = MixedGraph.from_labels(
        LETTERS,
        directed=[
            ("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"),
            ("b", "e"), ("c", "d"), ("c", "e"), ("d", "e"),
        ],
    )
    return Fixture(
        name="example1",
        graph=graph,
        oracle_rules=(
            # only a|d given {b,c}, a|e given {b,c,d} and c|e given {a,b,d} are judged to hold
            ("a", "e", ("b", "c"), False),
            ("c", "e", ("a", "b", "d"), True),
        ),
        orderings={
            "order1": ("d", "e", "a", "c", "b"),
            "order2": ("d", "c", "e", "a", "b"),
        },
    )


def example2() -> Fixture:
    graph = MixedGraph.from_labels(
        LETTERS,
        directed=[("b", "a"), ("c", "a"), ("b", "d"), ("c", "e"), ("d", "e")],
    )
    return Fixture(
        name="example2",
        graph=graph,
        oracle_rules=(
            ("c", "d", (), False),
            ("c", "d", ("e",), True),
        ),
        orderings={
            "order1": ("d", "c", "b", "a", "e"),
            "order3": ("c", "d", "e", "a", "b"),
        },
    )


def shared_head() -> Fixture:
    graph = MixedGraph.from_labels(
        ("A", "B", "C", "D"),
        directed=[("A", "D"), ("B", "C"), ("B", "D")],
        undirected=[("C", "D")],
    )
    return Fixture(
        name="shared_head",
        graph=graph,
        oracle_rules=(),
        orderings={"identity": ("A", "B", "C", "D")},
    )


FIXTURES = {"example1": example1, "example2": example2, "shared_head": shared_head}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError as e:
        raise ValidationException(
            "fixture", f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}"
        ) from e

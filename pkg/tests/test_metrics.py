import pytest

from Algorithms.Complex import true_pattern
from Bench.Metrics import score_skeleton, shd
from Graph.MixedGraph import MixedGraph
from utils.exceptions import VertexMismatchException


def skeleton_of(fx, pairs):
    v = fx.graph.vertex
    return MixedGraph(fx.graph.p, undirected=[(v(a), v(b)) for a, b in pairs], labels=fx.labels)


def test_extra_and_missing_edge(ex1):
    learned = skeleton_of(ex1, ["ab", "ac", "bc", "bd", "be", "cd", "de", "ae"])
    score = score_skeleton(learned, ex1.graph)
    assert (score.tp, score.fp, score.fn, score.tn) == (7, 1, 1, 1)
    assert score.acc == pytest.approx(0.8)
    assert score.tpr == pytest.approx(0.875)
    assert score.fpr == pytest.approx(0.5)
    assert score.tdr == pytest.approx(0.875)
    assert score.tdr_defined


def test_nothing_learned(ex1):
    score = score_skeleton(MixedGraph.empty(5), ex1.graph)
    assert score.tpr == 0.0 and score.tdr == 0.0 and not score.tdr_defined
    assert score.fpr == 0.0 and score.acc == pytest.approx(0.2)


def test_edgeless_truth_conventions():
    truth = MixedGraph.empty(4)
    assert score_skeleton(truth, truth).as_dict() == {
        "tp": 0, "fp": 0, "tn": 6, "fn": 0,
        "tpr": 1.0, "fpr": 0.0, "tdr": 1.0, "acc": 1.0, "tdr_defined": False,
    }
    spurious = score_skeleton(MixedGraph(4, undirected=[(0, 1)]), truth)
    assert spurious.tdr == 0.0 and spurious.fpr == pytest.approx(1 / 6)


def test_complete_truth_has_no_gaps():
    truth = MixedGraph(3, undirected=[(0, 1), (0, 2), (1, 2)])
    score = score_skeleton(MixedGraph(3, undirected=[(0, 1)]), truth)
    assert score.fpr == 0.0 and score.tpr == pytest.approx(1 / 3)


def test_tiny_graphs_have_perfect_accuracy():
    assert score_skeleton(MixedGraph(1), MixedGraph(1)).acc == 1.0


def test_shd_counts_every_differing_pair(ex1):
    assert shd(true_pattern(ex1.graph), MixedGraph.empty(5)) == 8
    assert shd(ex1.graph, ex1.graph) == 0
    reversed_arrow = MixedGraph(2, [(1, 0)])
    assert shd(MixedGraph(2, [(0, 1)]), reversed_arrow) == 1
    assert shd(MixedGraph(2, undirected=[(0, 1)]), reversed_arrow) == 1


def test_shd_of_an_unlabeled_arrow(fig4):
    pattern = true_pattern(fig4.graph)
    assert shd(fig4.graph, pattern) == 1


def test_vertex_counts_must_match():
    with pytest.raises(VertexMismatchException):
        score_skeleton(MixedGraph(2), MixedGraph(3))
    with pytest.raises(VertexMismatchException):
        shd(MixedGraph(2), MixedGraph(3))

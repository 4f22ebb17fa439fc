from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from pydantic import ValidationError

from Algorithms.Complex import (
    AmbiguityPolicy,
    extract_pattern,
    label_ambiguity,
    recover_complex_arrows,
    separating_family,
    true_pattern,
)
from Algorithms.Skeleton import SeparationSets, SkeletonResult, VariableOrdering, learn_skeleton
from Bench.Metrics import shd
from bruteforce import brute_pattern, random_graphs
from CITest.Oracle import GraphOracle, NoisyOracle, ScriptedOracle
from Graph.MixedGraph import MixedGraph
from Synth.Generator import GenSpec, random_chain_graph
from utils.exceptions import EmptyFamilyException, MissingSepsetException
from WorkFlow.pipeline import run_variant

CONSERVATIVE = AmbiguityPolicy.conservative()
MAJORITY_ZERO_HUNDRED = AmbiguityPolicy.majority(0, 100)

EXACT_VARIANTS = [
    "original-plain",
    "stable-plain",
    "stable-conservative",
    "stable-majority:30:60",
]


def arrows(fx, *pairs):
    return {(fx.graph.vertex(a), fx.graph.vertex(b)) for a, b in pairs}


def lines(fx, *pairs):
    return {tuple(sorted(fx.ids(a, b))) for a, b in pairs}


def noisy_fixtures(count, seed):
    rng = np.random.default_rng(seed)
    for index in range(count):
        g = random_chain_graph(GenSpec(p=6, N=2.0, seed=int(rng.integers(2**31))))
        yield NoisyOracle(g, 0.1, seed=index)


def four_cycle_oracle():
    """0 -> 2 <- 1 and 0 -> 3 <- 1, with two answers flipped so that the separating
    sets of (0, 1) disagree about vertex 2."""
    base = MixedGraph(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    return ScriptedOracle.from_rules(base, [(0, 1, [3], True), (0, 1, [2, 3], True)])


def test_shared_head_pipeline(fig4):
    oracle = fig4.oracle()
    result = learn_skeleton(oracle, fig4.ordering("identity"))
    assert result.sepsets.require(*fig4.ids("A", "B")) == frozenset()
    assert result.sepsets.require(*fig4.ids("A", "C")) == fig4.ids("B", "D")

    H_star = recover_complex_arrows(result, oracle)
    assert H_star.directed == arrows(fig4, "AD", "BC", "BD")
    assert H_star.undirected == lines(fig4, "CD")

    pattern = extract_pattern(H_star)
    assert pattern.labeled_arrows == arrows(fig4, "AD", "BD")
    assert pattern.graph.directed == arrows(fig4, "AD", "BD")
    assert pattern.graph.undirected == lines(fig4, "BC", "CD")
    assert shd(H_star, pattern) == 1
    assert pattern == true_pattern(fig4.graph)


def test_shared_head_is_unambiguous_under_cpc(fig4):
    oracle = fig4.oracle()
    result = learn_skeleton(oracle, mode="stable")
    pattern = label_ambiguity(result, oracle, CONSERVATIVE)
    assert not pattern.ambiguous_edges
    assert pattern == true_pattern(fig4.graph)


def test_example2_orientations_depend_on_the_separating_set(ex2):
    first = learn_skeleton(ex2.oracle(), ex2.ordering("order1"))
    H1 = recover_complex_arrows(first, ex2.oracle())
    assert H1.directed == arrows(ex2, "ba", "ca", "ce", "de")
    assert H1.undirected == lines(ex2, "bd")

    third = learn_skeleton(ex2.oracle(), ex2.ordering("order3"))
    H3 = recover_complex_arrows(third, ex2.oracle())
    assert H3.directed == arrows(ex2, "ba", "ca", "ce", "de", "db")
    assert not H3.undirected

    # d -> b heads no complex, so both runs end in the same pattern
    assert extract_pattern(H1) == extract_pattern(H3) == true_pattern(ex2.graph)


def test_extraction_is_idempotent(ex2):
    result = learn_skeleton(ex2.oracle(), ex2.ordering("order3"))
    once = extract_pattern(recover_complex_arrows(result, ex2.oracle()))
    assert extract_pattern(once.graph) == once


def test_plain_policy_is_recovery_then_extraction(ex1):
    result = learn_skeleton(ex1.oracle(), ex1.ordering("order2"))
    direct = extract_pattern(recover_complex_arrows(result, ex1.oracle()))
    assert label_ambiguity(result, ex1.oracle(), AmbiguityPolicy()) == direct


def test_missing_separating_set_is_reported():
    result = SkeletonResult(
        H=MixedGraph(3, undirected=[(0, 1), (1, 2)]),
        sepsets=SeparationSets(),
        order=VariableOrdering.identity(3),
        mode="original",
    )
    with pytest.raises(MissingSepsetException):
        recover_complex_arrows(result, GraphOracle(MixedGraph(3, [(0, 1), (2, 1)])))


def test_pair_without_any_separating_set_is_reported():
    result = SkeletonResult(
        H=MixedGraph(3, undirected=[(0, 1), (1, 2)]),
        sepsets=SeparationSets(),
        order=VariableOrdering.identity(3),
        mode="stable",
    )
    oracle = ScriptedOracle.from_rules(MixedGraph(3, undirected=[(0, 1), (1, 2)]), [(0, 2, [1], False)])
    with pytest.raises(EmptyFamilyException):
        label_ambiguity(result, oracle, AmbiguityPolicy.conservative())


def test_disagreeing_separating_sets():
    oracle = four_cycle_oracle()
    result = learn_skeleton(oracle)
    assert result.H.undirected == {(0, 2), (0, 3), (1, 2), (1, 3)}
    assert result.max_level == 2
    assert separating_family(oracle, result.H, 0, 1, 3, result.order) == [
        frozenset(),
        frozenset({3}),
        frozenset({2, 3}),
    ]

    plain = label_ambiguity(result, oracle, AmbiguityPolicy())
    assert plain.labeled_arrows == {(0, 2), (1, 2)} and not plain.ambiguous_edges

    cpc = label_ambiguity(result, oracle, CONSERVATIVE)
    assert cpc.ambiguous_edges == {(0, 2), (1, 2)}
    assert not cpc.graph.directed

    # one dependent vote out of three
    assert label_ambiguity(result, oracle, AmbiguityPolicy.majority(30, 60)) == cpc
    low = label_ambiguity(result, oracle, AmbiguityPolicy.majority(0, 30))
    assert low.labeled_arrows == {(0, 2), (1, 2)} and not low.ambiguous_edges
    high = label_ambiguity(result, oracle, AmbiguityPolicy.majority(40, 60))
    assert not high.graph.directed and not high.ambiguous_edges


def test_pair_separated_only_from_the_far_side_casts_no_vote():
    g = MixedGraph(
        10,
        [(0, 4), (0, 9), (1, 6), (1, 8), (2, 6), (2, 7), (4, 8), (5, 6), (5, 8), (6, 8), (6, 9), (7, 9)],
    )
    oracle = GraphOracle(g)
    result = learn_skeleton(oracle, mode="stable")
    assert result.H.adjacency_pairs() == g.adjacency_pairs()
    cap = result.max_level + 1
    assert separating_family(oracle, result.H, 1, 9, cap, result.order) == []
    assert separating_family(oracle, result.H, 9, 1, cap, result.order)
    for policy in (CONSERVATIVE, AmbiguityPolicy.majority(30, 60)):
        pattern = label_ambiguity(result, oracle, policy)
        assert not pattern.ambiguous_edges
        assert {(1, 8), (5, 8)} <= pattern.labeled_arrows
        assert shd(pattern, true_pattern(g)) == 0


def test_pair_with_a_recorded_set_but_no_family_abstains():
    result = SkeletonResult(
        H=MixedGraph(3, undirected=[(0, 1), (1, 2)]),
        sepsets=SeparationSets(),
        order=VariableOrdering.identity(3),
        mode="stable",
    )
    result.sepsets.record(0, 2, {1})
    oracle = ScriptedOracle.from_rules(MixedGraph(3, undirected=[(0, 1), (1, 2)]), [(0, 2, [1], False)])
    pattern = label_ambiguity(result, oracle, CONSERVATIVE)
    assert not pattern.graph.directed and not pattern.ambiguous_edges


@pytest.mark.parametrize(
    "f, decision",
    [
        (Fraction(3, 10), "keep"),
        (Fraction(6, 10), "orient"),
        (Fraction(1, 2), "ambiguous"),
        (Fraction(0), "keep"),
        (Fraction(1), "orient"),
    ],
)
def test_majority_thresholds_are_inclusive(f, decision):
    assert AmbiguityPolicy.majority(30, 60).decide(f) == decision


def test_equal_thresholds_favour_orientation():
    assert AmbiguityPolicy.majority(50, 50).decide(Fraction(1, 2)) == "orient"


def test_policy_validation():
    assert CONSERVATIVE.decide(Fraction(1, 2)) == "ambiguous"
    forced = AmbiguityPolicy(kind="conservative", alpha_pct=20, beta_pct=70)
    assert (forced.alpha_pct, forced.beta_pct) == (0.0, 100.0)
    with pytest.raises(ValidationError):
        AmbiguityPolicy.majority(60, 30)
    with pytest.raises(ValidationError):
        AmbiguityPolicy.majority(-1, 30)


def test_majority_zero_hundred_is_conservative(ex1, ex2, fig4):
    cases = [fx.oracle() for fx in (ex1, ex2, fig4)] + [four_cycle_oracle()]
    cases += list(noisy_fixtures(50, seed=41))
    for oracle in cases:
        for mode in ("original", "stable"):
            result = learn_skeleton(oracle, mode=mode)
            cpc = label_ambiguity(result, oracle, CONSERVATIVE)
            mpc = label_ambiguity(result, oracle, MAJORITY_ZERO_HUNDRED)
            assert cpc == mpc


def stable_patterns(oracle, order):
    result = learn_skeleton(oracle, order, mode="stable")
    return (
        result.H,
        label_ambiguity(result, oracle, CONSERVATIVE),
        label_ambiguity(result, oracle, AmbiguityPolicy.majority(30, 60)),
    )


@pytest.mark.parametrize("fixture", ["ex1", "ex2"])
def test_stable_patterns_ignore_the_ordering_on_examples(fixture, request):
    oracle = request.getfixturevalue(fixture).oracle()
    reference = stable_patterns(oracle, None)
    for order in permutations(range(5)):
        assert stable_patterns(oracle, order) == reference


def test_stable_patterns_ignore_the_ordering_under_noise():
    rng = np.random.default_rng(43)
    for oracle in noisy_fixtures(20, seed=47):
        reference = stable_patterns(oracle, None)
        for _ in range(24):
            order = [int(v) for v in rng.permutation(6)]
            assert stable_patterns(oracle, order) == reference


@pytest.mark.slow
def test_stable_patterns_ignore_every_ordering_under_noise():
    for oracle in noisy_fixtures(20, seed=47):
        reference = stable_patterns(oracle, None)
        for order in permutations(range(6)):
            assert stable_patterns(oracle, order) == reference


def test_true_pattern_matches_enumeration():
    for g in random_graphs(150, 10, 3.0, seed=53):
        assert true_pattern(g).graph == brute_pattern(g)


def test_exact_oracle_recovers_the_pattern():
    for g in random_graphs(200, 10, 3.0, seed=59):
        truth = brute_pattern(g)
        oracle = GraphOracle(g)
        for variant in EXACT_VARIANTS:
            output = run_variant(oracle, variant)
            assert shd(output.pattern, truth) == 0, (variant, g)
            assert not output.pattern.ambiguous_edges, (variant, g)


def test_exact_oracle_never_reverses_an_arrow():
    rng = np.random.default_rng(61)
    for g in random_graphs(60, 10, 3.0, seed=67):
        order = [int(v) for v in rng.permutation(g.p)]
        result = learn_skeleton(GraphOracle(g), order)
        H_star = recover_complex_arrows(result, GraphOracle(g))
        assert not any(g.has_directed(w, u) for u, w in H_star.directed)

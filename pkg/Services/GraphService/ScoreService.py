from typing import Any, Dict, Union

try:
    from Algorithms.Complex import Pattern, true_pattern
    from Bench.Metrics import score_skeleton, shd
    from Graph.MixedGraph import MixedGraph
    from utils.logger import get_logger
except ImportError:
    from ...Algorithms.Complex import Pattern, true_pattern
    from ...Bench.Metrics import score_skeleton, shd
    from ...Graph.MixedGraph import MixedGraph
    from ...utils.logger import get_logger

logger = get_logger()


def ScoreGraphs(
    learned: Union[Pattern, MixedGraph], truth: MixedGraph, truth_is_pattern: bool = False
) -> Dict[str, Any]:
    """Skeleton rates and SHD of learned against truth.

    Args:
        learned: learned pattern or graph
        truth: true chain graph, or its pattern when truth_is_pattern is set
        truth_is_pattern: skip computing the pattern of truth

    Returns:
        dict: tp, fp, tn, fn, tpr, fpr, tdr, tdr_defined, acc and shd
    """
    learned_graph = learned.graph if isinstance(learned, Pattern) else learned
    target = truth if truth_is_pattern else true_pattern(truth).graph
    metrics = score_skeleton(learned_graph, truth).as_dict()
    metrics["shd"] = shd(learned_graph, target)
    logger.info(f"Scored graphs: SHD={metrics['shd']}, ACC={metrics['acc']:.3f}")
    return metrics

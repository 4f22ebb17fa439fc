"""End-to-end learning pipeline: skeleton search followed by complex recovery."""

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Union

try:
    from Algorithms.Complex import Pattern, label_ambiguity
    from Algorithms.Skeleton import SkeletonResult, VariableOrdering, learn_skeleton
    from CITest.Oracle import CIOracle
    from Models.ExperimentModel import VariantSpec
    from utils.logger import get_logger, log_transition
except ImportError:
    from ..Algorithms.Complex import Pattern, label_ambiguity
    from ..Algorithms.Skeleton import SkeletonResult, VariableOrdering, learn_skeleton
    from ..CITest.Oracle import CIOracle
    from ..Models.ExperimentModel import VariantSpec
    from ..utils.logger import get_logger, log_transition

logger = get_logger()


@dataclass
class PipelineOutput:
    skeleton: SkeletonResult
    pattern: Pattern
    ci_tests: int
    runtime_ms: float


class LearningPipeline:
    """One configured variant, runnable against any oracle."""

    def __init__(self, variant: VariantSpec, n_jobs: int = 1, trace: bool = False):
        self.variant = variant
        self.n_jobs = n_jobs
        self.trace = trace

    def invoke(
        self,
        oracle: CIOracle,
        order: Optional[Union[Sequence[int], VariableOrdering]] = None,
    ) -> PipelineOutput:
        """Learn a pattern from the oracle's answers.

        Args:
            oracle: independence backend
            order: variable ordering, identity when omitted

        Returns:
            PipelineOutput: skeleton result, pattern, test count and wall-clock time
        """
        started = time.perf_counter()
        before = oracle.test_count
        skeleton = learn_skeleton(
            oracle, order, mode=self.variant.mode, trace=self.trace, n_jobs=self.n_jobs
        )
        log_transition("Skeleton", "Complex")
        pattern = label_ambiguity(skeleton, oracle, self.variant.policy)
        elapsed = (time.perf_counter() - started) * 1000.0
        logger.info(
            f"Variant {self.variant.name} finished: {pattern.graph.n_edges} edges, "
            f"{len(pattern.labeled_arrows)} arrows, {len(pattern.ambiguous_edges)} ambiguous"
        )
        return PipelineOutput(skeleton, pattern, oracle.test_count - before, elapsed)


def GetPipeline(variant: Union[str, VariantSpec], n_jobs: int = 1, trace: bool = False):
    if isinstance(variant, str):
        variant = VariantSpec.parse(variant)
    return LearningPipeline(variant, n_jobs=n_jobs, trace=trace)


def run_variant(
    oracle: CIOracle,
    variant: Union[str, VariantSpec],
    order: Optional[Union[Sequence[int], VariableOrdering]] = None,
    n_jobs: int = 1,
) -> PipelineOutput:
    return GetPipeline(variant, n_jobs=n_jobs).invoke(oracle, order)

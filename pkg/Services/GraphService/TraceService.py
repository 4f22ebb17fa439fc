from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import pandas as pd

try:
    from Algorithms.Skeleton import SkeletonResult, learn_skeleton, trace_frame, write_trace_csv
    from Synth.Fixtures import get_fixture
    from utils.logger import get_logger
except ImportError:
    from ...Algorithms.Skeleton import SkeletonResult, learn_skeleton, trace_frame, write_trace_csv
    from ...Synth.Fixtures import get_fixture
    from ...utils.logger import get_logger

logger = get_logger()


def TraceSkeleton(
    fixture: str,
    ordering: Union[str, Sequence[str]],
    mode: str = "original",
    output: Optional[Path] = None,
) -> Tuple[SkeletonResult, pd.DataFrame]:
    """Skeleton search on a reference fixture with full tracing.

    Args:
        fixture: fixture name (example1, example2, shared_head)
        ordering: a named ordering of the fixture, or labels in order
        mode: original or stable
        output: optional CSV path for the trace

    Returns:
        tuple: the skeleton result and its trace table (labels, not ids)
    """
    fx = get_fixture(fixture)
    if isinstance(ordering, str) and ordering in fx.orderings:
        order = fx.ordering(ordering)
    else:
        labels = ordering.split(",") if isinstance(ordering, str) else ordering
        order = tuple(fx.graph.vertex(label.strip()) for label in labels)

    result = learn_skeleton(fx.oracle(), order, mode=mode, trace=True)
    if output is not None:
        write_trace_csv(result, output, labels=fx.labels)
    logger.info(f"Traced {fixture} ({mode}): {len(result.trace)} rows")
    return result, trace_frame(result, labels=fx.labels)

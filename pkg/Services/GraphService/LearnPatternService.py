from typing import Optional, Sequence, Union

try:
    from Algorithms.Complex import Pattern
    from CITest.GaussCI import GaussianData, GaussianOracle
    from utils.exceptions import BaseAppException, ValidationException
    from utils.logger import get_logger
    from WorkFlow.pipeline import GetPipeline, PipelineOutput
except ImportError:
    from ...Algorithms.Complex import Pattern
    from ...CITest.GaussCI import GaussianData, GaussianOracle
    from ...utils.exceptions import BaseAppException, ValidationException
    from ...utils.logger import get_logger
    from ...WorkFlow.pipeline import GetPipeline, PipelineOutput

logger = get_logger()


def resolve_order(
    order: Optional[Sequence[Union[int, str]]], labels: Optional[Sequence[str]], p: int
) -> Optional[list]:
    """Ordering given by labels or by integer ids."""
    if not order:
        return None
    index = {label: i for i, label in enumerate(labels)} if labels is not None else {}
    resolved = []
    for item in order:
        key = str(item).strip()
        if key in index:
            resolved.append(index[key])
        elif key.isdigit() and int(key) < p:
            resolved.append(int(key))
        else:
            raise ValidationException("order", f"unknown vertex {key!r}")
    return resolved


def LearnPattern(
    data: GaussianData,
    alpha: float,
    variant: str = "stable-plain",
    order: Optional[Sequence[Union[int, str]]] = None,
    threads: int = 1,
) -> PipelineOutput:
    """Learn a pattern from a Gaussian dataset.

    Args:
        data: the sample
        alpha: Fisher-z significance level
        variant: ``<original|stable>-<plain|conservative|majority:a:b>``
        order: optional variable ordering, by label or id
        threads: worker threads for the stable skeleton search

    Returns:
        PipelineOutput: with the pattern carrying the dataset's column labels

    Raises:
        BaseAppException: invalid input or a failed independence test
    """
    logger.info(f"Learning pattern: n={data.n}, p={data.p}, alpha={alpha}, variant={variant}")
    try:
        pipeline = GetPipeline(variant, n_jobs=threads)
        output = pipeline.invoke(
            GaussianOracle(data, alpha), resolve_order(order, data.labels, data.p)
        )
    except BaseAppException:
        raise
    except Exception as e:
        logger.error(f"Unexpected error while learning pattern: {str(e)}", exc_info=True)
        raise

    if data.labels is not None:
        pattern = output.pattern
        output.pattern = Pattern(
            pattern.graph.with_labels(data.labels),
            pattern.labeled_arrows,
            pattern.ambiguous_edges,
        )
    return output

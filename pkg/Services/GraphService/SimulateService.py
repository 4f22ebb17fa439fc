from typing import Optional, Tuple

try:
    from CITest.GaussCI import GaussianData
    from Graph.MixedGraph import MixedGraph
    from Synth.Generator import (
        GaussianParams,
        GenSpec,
        ParamRanges,
        random_chain_graph,
        random_params,
        sample_gaussian,
    )
    from utils.logger import get_logger
except ImportError:
    from ...CITest.GaussCI import GaussianData
    from ...Graph.MixedGraph import MixedGraph
    from ...Synth.Generator import (
        GaussianParams,
        GenSpec,
        ParamRanges,
        random_chain_graph,
        random_params,
        sample_gaussian,
    )
    from ...utils.logger import get_logger

logger = get_logger()


def SimulateDataset(
    spec: GenSpec,
    n: int,
    sample_seed: Optional[int] = None,
    ranges: Optional[ParamRanges] = None,
) -> Tuple[MixedGraph, GaussianParams, GaussianData]:
    """Random chain graph, parameters and an n-row sample, all labelled X0..X{p-1}.

    Parameters use seed+1 and the sample seed+2 unless sample_seed is given.
    """
    g = random_chain_graph(spec)
    g = g.with_labels([f"X{i}" for i in range(g.p)])
    params = random_params(g, spec.seed + 1, ranges)
    data = sample_gaussian(g, params, n, spec.seed + 2 if sample_seed is None else sample_seed)
    logger.info(
        f"Simulated p={spec.p}, N={spec.N}, seed={spec.seed}: {g.n_edges} edges, n={n}"
    )
    return g, params, data

"""Benchmark driver over a grid of random chain graphs."""

from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

try:
    from Algorithms.Complex import true_pattern
    from Bench.Metrics import score_skeleton, shd
    from CITest.GaussCI import GaussianOracle
    from CITest.Oracle import GraphOracle
    from Models.ExperimentModel import ExperimentConfig, MetricRecord
    from Synth.Generator import GenSpec, random_chain_graph, random_params, sample_gaussian
    from utils.exceptions import BaseAppException
    from utils.logger import get_logger
    from WorkFlow.pipeline import run_variant
except ImportError:
    from ..Algorithms.Complex import true_pattern
    from .Metrics import score_skeleton, shd
    from ..CITest.GaussCI import GaussianOracle
    from ..CITest.Oracle import GraphOracle
    from ..Models.ExperimentModel import ExperimentConfig, MetricRecord
    from ..Synth.Generator import GenSpec, random_chain_graph, random_params, sample_gaussian
    from ..utils.exceptions import BaseAppException
    from ..utils.logger import get_logger
    from ..WorkFlow.pipeline import run_variant

logger = get_logger()

SORT_KEYS = ["p", "N", "n", "alpha", "repetition", "variant"]
RUNTIME_COLUMNS = ["runtime_ms"]
SUMMARY_METRICS = ["tpr", "fpr", "tdr", "acc", "shd", "runtime_ms"]


@dataclass(frozen=True)
class RunSeeds:
    graph: int
    params: int
    sample: int
    order: int

    @classmethod
    def derive(cls, base_seed: int, cell: int, repetition: int) -> "RunSeeds":
        """Independent streams per (base seed, grid cell, repetition)."""
        state = np.random.SeedSequence([base_seed, cell, repetition]).generate_state(4)
        return cls(*(int(s) for s in state))


def _run_repetition(
    cfg: ExperimentConfig, cell: int, p: int, N: float, repetition: int
) -> List[MetricRecord]:
    seeds = RunSeeds.derive(cfg.base_seed, cell, repetition)
    g = random_chain_graph(GenSpec(p=p, N=N, seed=seeds.graph))
    params = random_params(g, seeds.params)
    truth = true_pattern(g)
    order = (
        np.random.default_rng(seeds.order).permutation(p).tolist()
        if cfg.shuffle_order
        else list(range(p))
    )

    records = []
    for n in cfg.n:
        data = None if cfg.exact_oracle else sample_gaussian(g, params, n, seeds.sample)
        for alpha, variant in product(cfg.alpha, cfg.variant_specs()):
            coords = dict(
                p=p, n=n, N=N, alpha=alpha, variant=variant.name,
                repetition=repetition, seed=seeds.graph,
            )
            oracle = GraphOracle(g) if data is None else GaussianOracle(data, alpha)
            try:
                output = run_variant(oracle, variant, order)
            except BaseAppException as e:
                logger.warning(f"Run {coords} failed: {e.message}")
                records.append(MetricRecord(**coords, error=e.message))
                continue
            except Exception as e:
                logger.error(f"Run {coords} crashed: {e}", exc_info=True)
                records.append(MetricRecord(**coords, error=f"{type(e).__name__}: {e}"))
                continue
            score = score_skeleton(output.pattern.graph, g)
            records.append(
                MetricRecord(
                    **coords,
                    **score.as_dict(),
                    shd=shd(output.pattern, truth),
                    n_ambiguous=len(output.pattern.ambiguous_edges),
                    ci_tests=output.ci_tests,
                    runtime_ms=output.runtime_ms,
                )
            )
    return records


def sort_records(records: List[MetricRecord]) -> List[MetricRecord]:
    return sorted(records, key=lambda r: tuple(getattr(r, key) for key in SORT_KEYS))


def records_frame(records: List[MetricRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in records], columns=list(MetricRecord.model_fields))


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean and median of every metric per (cell, n, alpha, variant), plus error counts."""
    keys = ["p", "N", "n", "alpha", "variant"]
    grouped = frame.groupby(keys, sort=True)
    stats = grouped[SUMMARY_METRICS].agg(["mean", "median"])
    stats.columns = [f"{metric}_{stat}" for metric, stat in stats.columns]
    stats["runs"] = grouped.size()
    stats["errors"] = grouped["error"].count()
    return stats.reset_index()


def run_experiment(
    cfg: ExperimentConfig, output_dir: Optional[Path] = None
) -> Tuple[List[MetricRecord], Path]:
    """Run the whole grid and write ``results.csv`` and ``summary.csv``.

    Records are canonically sorted before writing, so the files do not depend on the
    thread count apart from the runtime column.

    Returns:
        tuple: the sorted records and the path of results.csv
    """
    output_dir = Path(output_dir or cfg.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    jobs = [
        (cell, p, N, repetition)
        for cell, (p, N) in enumerate(product(cfg.p, cfg.N))
        for repetition in range(cfg.repetitions)
    ]
    logger.info(f"Benchmark started: {len(jobs)} graphs, {len(cfg.variants)} variants, threads={cfg.threads}")

    batches = Parallel(n_jobs=cfg.threads, prefer="threads")(
        delayed(_run_repetition)(cfg, cell, p, N, repetition) for cell, p, N, repetition in jobs
    )
    records = sort_records([record for batch in batches for record in batch])
    frame = records_frame(records)

    results_path = output_dir / "results.csv"
    frame.to_csv(results_path, index=False)
    summarize(frame).to_csv(output_dir / "summary.csv", index=False)
    failed = int(frame["error"].notna().sum())
    logger.info(f"Benchmark finished: {len(frame)} records ({failed} failed) written to {results_path}")
    return records, results_path

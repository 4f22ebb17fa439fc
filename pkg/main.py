import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

# make the flat packages importable when run as a script
root_dir = Path(__file__).parent
if str(root_dir) not in sys.path:
    sys.path.insert(0, str(root_dir))

from Controller.GraphControllers.LearnController import \
    router as learn_router  # noqa: E402
from Controller.GraphControllers.ResultsController import \
    router as results_router  # noqa: E402
from Controller.GraphControllers.ScoreController import \
    router as score_router  # noqa: E402
from Controller.GraphControllers.SimulateController import \
    router as simulate_router  # noqa: E402
from Models.ExperimentModel import ExperimentConfig  # noqa: E402
from Services.BenchService.RunBenchmarkService import RunBenchmark  # noqa: E402
from Services.GraphService.LearnPatternService import LearnPattern  # noqa: E402
from Services.GraphService.ScoreService import ScoreGraphs  # noqa: E402
from Services.GraphService.SimulateService import SimulateDataset  # noqa: E402
from Services.GraphService.TraceService import TraceSkeleton  # noqa: E402
from Synth.Generator import GenSpec  # noqa: E402
from utils.DatasetFile import read_dataset, write_dataset  # noqa: E402
from utils.exceptions import BaseAppException  # noqa: E402
from utils.GraphFile import read_graph, read_labels, read_pattern, write_graph, write_pattern  # noqa: E402
from utils.logger import get_logger  # noqa: E402
from utils.settings import get_settings  # noqa: E402

logger = get_logger()

VERSION = "0.1.0"

app = FastAPI(
    title="cglearn API",
    description="Chain-graph structure learning: pattern recovery, simulation and scoring",
    version=VERSION,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(learn_router)
app.include_router(results_router)
app.include_router(score_router)
app.include_router(simulate_router)


@app.get("/")
def root():
    """Root endpoint."""
    return {"message": "cglearn API is running", "version": VERSION}


@app.get("/health")
def health_check():
    """Health check endpoint."""
    return {"status": "healthy"}


def _learn(args) -> int:
    labels = read_labels(args.labels) if args.labels else None
    data = read_dataset(args.dataset, labels)
    output = LearnPattern(
        data,
        args.alpha,
        variant=args.variant,
        order=args.order.split(",") if args.order else None,
        threads=args.threads,
    )
    graph_path, sidecar = write_pattern(output.pattern, args.out)
    print(
        f"{graph_path}: {output.pattern.graph.n_edges} edges, "
        f"{len(output.pattern.labeled_arrows)} complex arrows, "
        f"{len(output.pattern.ambiguous_edges)} ambiguous edges, {output.ci_tests} tests"
    )
    return 0


def _simulate(args) -> int:
    spec = GenSpec(p=args.p, N=args.N, seed=args.seed)
    g, params, data = SimulateDataset(spec, args.n, args.sample_seed)
    out = Path(args.out_dir)
    write_graph(g, out / "graph.txt")
    write_dataset(data, out / "data.csv")
    manifest = {
        "spec": spec.model_dump(),
        "n": args.n,
        "sample_seed": args.sample_seed,
        "params_digest": params.digest(),
        "params": params.to_dict(),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"{out}: graph.txt ({g.n_edges} edges), data.csv (n={data.n}), manifest.json")
    return 0


def _bench(args) -> int:
    cfg = ExperimentConfig.from_file(args.config)
    if args.threads:
        cfg = cfg.model_copy(update={"threads": args.threads})
    records, path = RunBenchmark(
        cfg, output_dir=args.out_dir, store=args.store, experiment=args.experiment
    )
    failed = sum(1 for r in records if r.error)
    print(f"{path}: {len(records)} records, {failed} failed")
    return 0


def _score(args) -> int:
    learned = read_pattern(args.learned, args.labels)
    truth = read_graph(args.truth, args.labels)
    metrics = ScoreGraphs(learned, truth, truth_is_pattern=args.truth_is_pattern)
    print(json.dumps(metrics, indent=2))
    return 0


def _trace(args) -> int:
    _, table = TraceSkeleton(args.fixture, args.ordering, mode=args.mode, output=args.out)
    print(table.to_csv(index=False), end="")
    return 0


def _serve(args) -> int:
    import uvicorn

    logger.info("Starting FastAPI server...")
    uvicorn.run("main:app", host=args.host, port=args.port, reload=args.reload, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="cglearn", description="Chain-graph structure learning")
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a pattern from a CSV dataset")
    learn.add_argument("dataset", type=Path, help="CSV, n rows by p numeric columns")
    learn.add_argument("--alpha", type=float, default=settings.default_alpha,
                       help=f"significance level (default {settings.default_alpha})")
    learn.add_argument("--variant", default="stable-plain",
                       help="<original|stable>-<plain|conservative|majority:a:b> (default stable-plain)")
    learn.add_argument("--order", help="comma-separated variable ordering (default column order)")
    learn.add_argument("--labels", type=Path, help="labels file, one name per line")
    learn.add_argument("--threads", type=int, default=settings.threads,
                       help="worker threads for the stable skeleton search")
    learn.add_argument("--out", type=Path, default=Path("pattern.txt"),
                       help="pattern graph file; a .pattern.json sidecar goes next to it")
    learn.set_defaults(handler=_learn)

    simulate = sub.add_parser("simulate", help="random chain graph plus Gaussian sample")
    simulate.add_argument("--p", type=int, required=True, help="vertex count")
    simulate.add_argument("--N", type=float, default=2.0, help="expected degree (default 2)")
    simulate.add_argument("--n", type=int, default=1000, help="sample size (default 1000)")
    simulate.add_argument("--seed", type=int, default=0, help="graph seed (default 0)")
    simulate.add_argument("--sample-seed", type=int, default=None,
                          help="sample seed (default seed+2)")
    simulate.add_argument("--out-dir", type=Path, default=Path("simulated"))
    simulate.set_defaults(handler=_simulate)

    bench = sub.add_parser("bench", help="run a benchmark grid from a JSON config")
    bench.add_argument("config", type=Path)
    bench.add_argument("--out-dir", type=Path, default=None,
                       help="overrides output_dir of the config")
    bench.add_argument("--threads", type=int, default=None, help="overrides threads of the config")
    bench.add_argument("--store", action="store_true", help="persist records to DATABASE_URL")
    bench.add_argument("--experiment", default=None, help="experiment name used by --store")
    bench.set_defaults(handler=_bench)

    score = sub.add_parser("score", help="compare a learned graph with the truth")
    score.add_argument("learned", type=Path)
    score.add_argument("truth", type=Path)
    score.add_argument("--truth-is-pattern", action="store_true",
                       help="truth is already a pattern (default: a chain graph)")
    score.add_argument("--labels", type=Path, help="labels file shared by both graphs")
    score.set_defaults(handler=_score)

    trace = sub.add_parser("trace", help="traced skeleton search on a reference fixture")
    trace.add_argument("fixture", help="example1, example2 or shared_head")
    trace.add_argument("ordering", help="named ordering (e.g. order1) or comma-separated labels")
    trace.add_argument("--mode", choices=["original", "stable"], default="original")
    trace.add_argument("--out", type=Path, default=None, help="CSV path for the trace")
    trace.set_defaults(handler=_trace)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="0.0.0.0")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--reload", action="store_true")
    serve.set_defaults(handler=_serve)
    return parser


def cli(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except BaseAppException as e:
        logger.warning(f"{args.command} failed: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(cli())

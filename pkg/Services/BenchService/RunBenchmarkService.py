from pathlib import Path
from typing import List, Optional, Tuple

from sqlalchemy.orm import Session

try:
    from Bench.Experiment import run_experiment
    from Database.core import get_session
    from Models.ExperimentModel import ExperimentConfig, MetricRecord
    from Schema.RunRecord import RunRecordRow
    from utils.exceptions import ResultStoreException
    from utils.logger import get_logger
except ImportError:
    from ...Bench.Experiment import run_experiment
    from ...Database.core import get_session
    from ...Models.ExperimentModel import ExperimentConfig, MetricRecord
    from ...Schema.RunRecord import RunRecordRow
    from ...utils.exceptions import ResultStoreException
    from ...utils.logger import get_logger

logger = get_logger()


def StoreRecords(db: Session, records: List[MetricRecord], experiment: str) -> int:
    """Persist scored runs under an experiment name.

    Raises:
        ResultStoreException: if the insert fails
    """
    try:
        db.add_all(RunRecordRow(experiment=experiment, **r.model_dump()) for r in records)
        db.commit()
    except Exception as e:
        db.rollback()
        logger.error(f"Could not store {len(records)} records: {str(e)}", exc_info=True)
        raise ResultStoreException("store_records", str(e)) from e
    logger.info(f"Stored {len(records)} records for experiment '{experiment}'")
    return len(records)


def LoadRecords(db: Session, experiment: str) -> List[MetricRecord]:
    try:
        rows = (
            db.query(RunRecordRow)
            .filter(RunRecordRow.experiment == experiment)
            .order_by(RunRecordRow.p, RunRecordRow.N, RunRecordRow.n, RunRecordRow.alpha,
                      RunRecordRow.repetition, RunRecordRow.variant)
            .all()
        )
    except Exception as e:
        raise ResultStoreException("load_records", str(e)) from e
    return [MetricRecord.model_validate(row) for row in rows]


def RunBenchmark(
    cfg: ExperimentConfig,
    output_dir: Optional[Path] = None,
    store: bool = False,
    experiment: Optional[str] = None,
    database_url: str = "",
) -> Tuple[List[MetricRecord], Path]:
    """Run the benchmark grid, write CSVs and optionally persist the records."""
    records, path = run_experiment(cfg, output_dir)
    if store:
        db = get_session(database_url)
        try:
            StoreRecords(db, records, experiment or Path(path).parent.name)
        finally:
            db.close()
    return records, path

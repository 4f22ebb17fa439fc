from typing import List

from fastapi import APIRouter, HTTPException, status

try:
    from Database.core import DBSession
    from Models.ExperimentModel import MetricRecord
    from Services.BenchService.RunBenchmarkService import LoadRecords
    from utils.exceptions import BaseAppException, handle_app_exception
    from utils.logger import get_logger
except ImportError:
    from ...Database.core import DBSession
    from ...Models.ExperimentModel import MetricRecord
    from ...Services.BenchService.RunBenchmarkService import LoadRecords
    from ...utils.exceptions import BaseAppException, handle_app_exception
    from ...utils.logger import get_logger

logger = get_logger()

router = APIRouter(prefix="/graph", tags=["Graph"])


@router.get("/results/{experiment}", status_code=status.HTTP_200_OK, response_model=List[MetricRecord])
def get_results(experiment: str, db: DBSession):
    """Stored benchmark records of an experiment, in grid order.

    Args:
        experiment: Name given to ``bench --store``
        db: Database session (injected)
    """
    logger.info(f"Received results request for experiment '{experiment}'")
    try:
        records = LoadRecords(db, experiment)
        logger.info(f"Returning {len(records)} records for experiment '{experiment}'")
        return records

    except BaseAppException as e:
        logger.warning(f"Application exception while loading results: {e.message}")
        raise handle_app_exception(e)

    except Exception as e:
        logger.error(f"Unexpected error while loading results: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail={
                "error": "InternalServerError",
                "message": "An unexpected error occurred while loading results.",
            },
        ) from e

from fastapi import APIRouter, HTTPException, status

try:
    from Models.RequestModel import ScoreRequestModel
    from Models.ResponseModel import ScoreResponseModel
    from Services.GraphService.ScoreService import ScoreGraphs
    from utils.exceptions import BaseAppException, handle_app_exception
    from utils.GraphFile import parse_graph
    from utils.logger import get_logger
except ImportError:
    from ...Models.RequestModel import ScoreRequestModel
    from ...Models.ResponseModel import ScoreResponseModel
    from ...Services.GraphService.ScoreService import ScoreGraphs
    from ...utils.exceptions import BaseAppException, handle_app_exception
    from ...utils.GraphFile import parse_graph
    from ...utils.logger import get_logger

logger = get_logger()

router = APIRouter(prefix="/graph", tags=["Graph"])


@router.post("/score", status_code=status.HTTP_200_OK, response_model=ScoreResponseModel)
def score_graphs(request: ScoreRequestModel):
    """Skeleton metrics and SHD of a learned graph against the truth."""
    try:
        metrics = ScoreGraphs(
            parse_graph(request.learned),
            parse_graph(request.truth),
            truth_is_pattern=request.truth_is_pattern,
        )
        return ScoreResponseModel(**metrics)

    except BaseAppException as e:
        logger.warning(f"Application exception during scoring: {e.message}")
        raise handle_app_exception(e)

    except Exception as e:
        logger.error(f"Unexpected error during scoring: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail={
                "error": "InternalServerError",
                "message": "An unexpected error occurred while scoring.",
            },
        ) from e

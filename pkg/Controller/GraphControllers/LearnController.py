"""Controller for learning a pattern from an uploaded CSV dataset."""

import io
from typing import Optional

import pandas as pd
from fastapi import APIRouter, File, Form, HTTPException, UploadFile, status

try:
    from Models.ResponseModel import PatternResponseModel
    from Services.GraphService.LearnPatternService import LearnPattern
    from utils.DatasetFile import frame_to_dataset
    from utils.exceptions import BaseAppException, handle_app_exception
    from utils.GraphFile import format_graph
    from utils.logger import get_logger
    from utils.settings import get_settings
except ImportError:
    from ...Models.ResponseModel import PatternResponseModel
    from ...Services.GraphService.LearnPatternService import LearnPattern
    from ...utils.DatasetFile import frame_to_dataset
    from ...utils.exceptions import BaseAppException, handle_app_exception
    from ...utils.GraphFile import format_graph
    from ...utils.logger import get_logger
    from ...utils.settings import get_settings

logger = get_logger()

router = APIRouter(prefix="/graph", tags=["Graph"])

MAX_FILE_SIZE = 50 * 1024 * 1024  # 50MB


@router.post("/learn", status_code=status.HTTP_200_OK, response_model=PatternResponseModel)
async def learn_pattern(
    dataset: UploadFile = File(..., description="CSV file, n rows by p numeric columns"),
    alpha: Optional[float] = Form(None, description="Significance level, default from settings"),
    variant: str = Form("stable-plain", description="<original|stable>-<plain|conservative|majority:a:b>"),
    order: Optional[str] = Form(None, description="Comma-separated variable ordering"),
):
    """Learn a chain-graph pattern from uploaded data.

    Returns:
        PatternResponseModel: pattern text plus labeled arrows and ambiguous edges

    Raises:
        HTTPException: invalid upload, invalid parameters, or a failed test
    """
    logger.info(f"Received learn request: file={dataset.filename}, variant={variant}")
    content = await dataset.read()
    if len(content) > MAX_FILE_SIZE:
        raise HTTPException(
            status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
            detail={"error": "FileTooLarge", "message": "Dataset exceeds 50MB"},
        )

    try:
        frame = pd.read_csv(io.BytesIO(content), header=None, dtype=str, skipinitialspace=True)
        data = frame_to_dataset(frame)
        output = LearnPattern(
            data,
            alpha if alpha is not None else get_settings().default_alpha,
            variant=variant,
            order=order.split(",") if order else None,
        )
        g = output.pattern.graph
        return PatternResponseModel(
            variant=variant,
            graph=format_graph(g),
            labeled_arrows=[[g.label(u), g.label(v)] for u, v in sorted(output.pattern.labeled_arrows)],
            ambiguous_edges=[[g.label(u), g.label(v)] for u, v in sorted(output.pattern.ambiguous_edges)],
            ci_tests=output.ci_tests,
            runtime_ms=output.runtime_ms,
        )

    except BaseAppException as e:
        logger.warning(f"Application exception during learning: {e.message}")
        raise handle_app_exception(e)

    except (ValueError, pd.errors.ParserError) as e:
        logger.warning(f"Validation error during learning: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={"error": "ValidationError", "message": str(e)},
        ) from e

    except Exception as e:
        logger.error(f"Unexpected error during learning: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail={
                "error": "InternalServerError",
                "message": "An unexpected error occurred while learning the pattern.",
            },
        ) from e

from fastapi import APIRouter, HTTPException, status
from pydantic import ValidationError

try:
    from Models.RequestModel import SimulateRequestModel
    from Models.ResponseModel import SimulateResponseModel
    from Services.GraphService.SimulateService import SimulateDataset
    from Synth.Generator import GenSpec
    from utils.DatasetFile import dataset_to_csv
    from utils.exceptions import BaseAppException, handle_app_exception
    from utils.GraphFile import format_graph
    from utils.logger import get_logger
except ImportError:
    from ...Models.RequestModel import SimulateRequestModel
    from ...Models.ResponseModel import SimulateResponseModel
    from ...Services.GraphService.SimulateService import SimulateDataset
    from ...Synth.Generator import GenSpec
    from ...utils.DatasetFile import dataset_to_csv
    from ...utils.exceptions import BaseAppException, handle_app_exception
    from ...utils.GraphFile import format_graph
    from ...utils.logger import get_logger

logger = get_logger()

router = APIRouter(prefix="/graph", tags=["Graph"])


@router.post("/simulate", status_code=status.HTTP_200_OK, response_model=SimulateResponseModel)
def simulate(request: SimulateRequestModel):
    """Random chain graph and a Gaussian sample from it."""
    try:
        spec = GenSpec(p=request.p, N=request.N, seed=request.seed)
        g, params, data = SimulateDataset(spec, request.n, request.sample_seed)
        return SimulateResponseModel(
            graph=format_graph(g), dataset_csv=dataset_to_csv(data), params_digest=params.digest()
        )

    except ValidationError as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail={"error": "ValidationError", "message": str(e)},
        ) from e

    except BaseAppException as e:
        logger.warning(f"Application exception during simulation: {e.message}")
        raise handle_app_exception(e)

    except Exception as e:
        logger.error(f"Unexpected error during simulation: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail={
                "error": "InternalServerError",
                "message": "An unexpected error occurred while simulating.",
            },
        ) from e

"""CSV datasets: n rows by p numeric columns, with or without a header row."""

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

try:
    from CITest.GaussCI import GaussianData
    from utils.exceptions import ValidationException
    from utils.logger import get_logger
except ImportError:
    from ..CITest.GaussCI import GaussianData
    from .exceptions import ValidationException
    from .logger import get_logger

logger = get_logger()


def _is_number(value) -> bool:
    try:
        float(value)
    except (TypeError, ValueError):
        return False
    return True


def frame_to_dataset(frame: pd.DataFrame, labels: Optional[Sequence[str]] = None) -> GaussianData:
    """Raw string frame to GaussianData; a non-numeric first row is taken as header."""
    if frame.empty:
        raise ValidationException("dataset", "no rows")
    header = None
    if not all(_is_number(x) for x in frame.iloc[0]):
        header = [str(x).strip() for x in frame.iloc[0]]
        frame = frame.iloc[1:]
    try:
        values = frame.astype(float).to_numpy()
    except ValueError as e:
        raise ValidationException("dataset", f"non-numeric cell: {e}") from e
    if not np.all(np.isfinite(values)):
        raise ValidationException("dataset", "missing or infinite values")
    return GaussianData(values, labels=list(labels) if labels is not None else header)


def read_dataset(path: Path, labels: Optional[Sequence[str]] = None) -> GaussianData:
    frame = pd.read_csv(path, header=None, dtype=str, skipinitialspace=True)
    data = frame_to_dataset(frame, labels)
    logger.info(f"Loaded dataset {path}: n={data.n}, p={data.p}")
    return data


def _frame(data: GaussianData) -> pd.DataFrame:
    columns = list(data.labels) if data.labels is not None else [f"X{i}" for i in range(data.p)]
    return pd.DataFrame(data.columns, columns=columns)


def dataset_to_csv(data: GaussianData) -> str:
    return _frame(data).to_csv(index=False, float_format="%.17g")


def write_dataset(data: GaussianData, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    _frame(data).to_csv(path, index=False, float_format="%.17g")
    return path

from typing import Optional

from pydantic import BaseModel, Field


class ScoreRequestModel(BaseModel):
    """Two graphs in the text graph format."""

    learned: str
    truth: str
    # when false the truth is a chain graph and is scored through its pattern
    truth_is_pattern: bool = False


class SimulateRequestModel(BaseModel):
    p: int = Field(ge=1, le=500)
    N: float = Field(default=2.0, ge=0.0)
    n: int = Field(default=500, ge=1, le=100_000)
    seed: int = 0
    sample_seed: Optional[int] = None

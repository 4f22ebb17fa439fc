from typing import List

from pydantic import BaseModel


class PatternResponseModel(BaseModel):
    """Learned pattern in the text graph format with its sidecar lists."""

    variant: str
    graph: str
    labeled_arrows: List[List[str]]
    ambiguous_edges: List[List[str]]
    ci_tests: int
    runtime_ms: float


class ScoreResponseModel(BaseModel):
    tp: int
    fp: int
    tn: int
    fn: int
    tpr: float
    fpr: float
    tdr: float
    tdr_defined: bool
    acc: float
    shd: int


class SimulateResponseModel(BaseModel):
    graph: str
    dataset_csv: str
    params_digest: str

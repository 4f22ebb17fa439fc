from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

try:
    from Algorithms.Complex import AmbiguityPolicy
    from utils.exceptions import ValidationException
    from utils.settings import get_settings
except ImportError:
    from ..Algorithms.Complex import AmbiguityPolicy
    from ..utils.exceptions import ValidationException
    from ..utils.settings import get_settings

RESULTS_SCHEMA_VERSION = 1


class VariantSpec(BaseModel):
    """Skeleton mode plus orientation policy, written ``<mode>-<policy>``.

    Examples: ``original-plain``, ``stable-conservative``, ``stable-majority:30:60``.
    """

    mode: Literal["original", "stable"] = "stable"
    policy: AmbiguityPolicy = Field(default_factory=AmbiguityPolicy)

    model_config = ConfigDict(frozen=True)

    @classmethod
    def parse(cls, text: str) -> "VariantSpec":
        mode, _, rest = text.strip().partition("-")
        kind, *thresholds = rest.split(":") if rest else ["plain"]
        if mode not in ("original", "stable") or kind not in ("plain", "conservative", "majority"):
            raise ValidationException("variant", f"cannot parse {text!r}")
        try:
            if kind == "majority":
                if len(thresholds) != 2:
                    raise ValueError("majority needs alpha and beta, e.g. majority:30:60")
                policy = AmbiguityPolicy.majority(float(thresholds[0]), float(thresholds[1]))
            elif thresholds:
                raise ValueError(f"{kind} takes no thresholds")
            else:
                policy = AmbiguityPolicy(kind=kind)
        except ValueError as e:
            raise ValidationException("variant", f"{text!r}: {e}") from e
        return cls(mode=mode, policy=policy)

    @property
    def name(self) -> str:
        if self.policy.kind == "majority":
            return f"{self.mode}-majority:{self.policy.alpha_pct:g}:{self.policy.beta_pct:g}"
        return f"{self.mode}-{self.policy.kind}"


class ExperimentConfig(BaseModel):
    """Benchmark grid: every (p, N) cell is repeated, sampled at every n, and learned
    with every variant at every alpha."""

    p: List[int] = Field(default_factory=lambda: [50], min_length=1)
    n: List[int] = Field(default_factory=lambda: [2000], min_length=1)
    N: List[float] = Field(default_factory=lambda: [3.0], min_length=1)
    alpha: List[float] = Field(default_factory=lambda: [0.005], min_length=1)
    variants: List[str] = Field(
        default_factory=lambda: ["original-plain", "stable-plain"], min_length=1
    )
    repetitions: int = Field(default=30, ge=1)
    base_seed: int = 0
    threads: int = Field(default_factory=lambda: get_settings().threads, ge=1)
    exact_oracle: bool = False
    shuffle_order: bool = False
    output_dir: Path = Path("results")

    @field_validator("variants")
    @classmethod
    def _parse_variants(cls, variants: List[str]) -> List[str]:
        return [VariantSpec.parse(v).name for v in variants]

    @field_validator("alpha")
    @classmethod
    def _check_alpha(cls, alphas: List[float]) -> List[float]:
        for a in alphas:
            if not 0.0 < a < 1.0:
                raise ValueError(f"alpha {a} outside (0,1)")
        return alphas

    @model_validator(mode="after")
    def _check_cells(self):
        if min(self.p) < 1 or min(self.n) < 1:
            raise ValueError("p and n entries must be positive")
        for p in self.p:
            for N in self.N:
                if N < 0 or N > max(p - 1, 0):
                    raise ValueError(f"expected degree N={N} invalid for p={p}")
        return self

    @classmethod
    def from_file(cls, path: Path) -> "ExperimentConfig":
        return cls.model_validate_json(Path(path).read_text())

    def variant_specs(self) -> List[VariantSpec]:
        return [VariantSpec.parse(v) for v in self.variants]


class MetricRecord(BaseModel):
    """One learned graph scored against the truth pattern."""

    schema_version: int = RESULTS_SCHEMA_VERSION
    p: int
    n: int
    N: float
    alpha: float
    variant: str
    repetition: int
    seed: int
    tp: Optional[int] = None
    fp: Optional[int] = None
    tn: Optional[int] = None
    fn: Optional[int] = None
    tpr: Optional[float] = None
    fpr: Optional[float] = None
    tdr: Optional[float] = None
    tdr_defined: Optional[bool] = None
    acc: Optional[float] = None
    shd: Optional[int] = Field(default=None, ge=0)
    n_ambiguous: Optional[int] = None
    ci_tests: Optional[int] = None
    runtime_ms: Optional[float] = Field(default=None, ge=0.0)
    error: Optional[str] = None

    model_config = ConfigDict(from_attributes=True)

from enum import IntEnum, StrEnum, auto

from pydantic import Field, model_validator

from lldpd.config.config import settings
from lldpd.models.mixin import FrozenModel
from lldpd.models.params import Params, Tau

DPD_TAU_GRID: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


class ContaminationCase(IntEnum):
    # 1: 오염 없음
    clean = 1
    # 2: LL(1, 0.2)
    heavy_tail = 2
    # 3: LL(4, 10)
    shifted_scale = 3
    # 4: U(0, 20)
    uniform = 4
    # 5: 상수 50
    constant = 5


class EstimatorKind(StrEnum):
    dpd = auto()
    rm = auto()
    sm = auto()
    hl = auto()


class EstimatorSpec(FrozenModel):
    kind: EstimatorKind
    # dpd에서만 사용. 0이면 MLE
    tau: Tau | None = None

    @model_validator(mode="after")
    def _tau_only_for_dpd(self):
        if self.kind == EstimatorKind.dpd and self.tau is None:
            raise ValueError("dpd 추정량에는 tau가 필요합니다.")
        if self.kind != EstimatorKind.dpd and self.tau is not None:
            raise ValueError(f"{self.kind} 추정량에는 tau를 지정할 수 없습니다.")
        return self

    @property
    def label(self) -> str:
        if self.kind != EstimatorKind.dpd:
            return self.kind.value.upper()
        if self.tau == 0:
            return "MLE"
        return f"DPD_{self.tau:g}"


def default_estimators(taus: tuple[float, ...] = DPD_TAU_GRID) -> tuple[EstimatorSpec, ...]:
    """MLE, DPD_τ 격자, RM, SM, HL 순서 (결과 표의 행 순서)"""
    specs = [EstimatorSpec(kind=EstimatorKind.dpd, tau=0.0)]
    specs += [EstimatorSpec(kind=EstimatorKind.dpd, tau=t) for t in taus if t > 0]
    specs += [EstimatorSpec(kind=k) for k in (EstimatorKind.rm, EstimatorKind.sm, EstimatorKind.hl)]
    return tuple(specs)


class ScenarioSpec(FrozenModel):
    truth: Params
    n: int = Field(ge=1)
    replications: int = Field(ge=1)
    contamination: ContaminationCase = ContaminationCase.clean
    estimators: tuple[EstimatorSpec, ...] = Field(
        default_factory=default_estimators, min_length=1
    )
    seed: int = Field(default_factory=lambda: settings.simulation.seed)
    contaminated_count: int = Field(
        default_factory=lambda: settings.simulation.contaminated_count, ge=1
    )

    @model_validator(mode="after")
    def _enough_points_to_contaminate(self):
        if (
            self.contamination != ContaminationCase.clean
            and self.n <= self.contaminated_count
        ):
            raise ValueError(
                f"Case {int(self.contamination)}는 n > {self.contaminated_count} 이어야 합니다 (n={self.n})."
            )
        return self

    @property
    def label(self) -> str:
        return f"beta={self.truth.beta:g};n={self.n};case={int(self.contamination)}"


class MetricsRow(FrozenModel):
    estimator: str
    # 모든 반복이 실패하면 None
    mean_bias: float | None = None
    rmse: float | None = Field(default=None, ge=0)
    mean_alpha_hat: float | None = None
    mean_beta_hat: float | None = None
    n_failed: int = Field(ge=0)
    scenario: str | None = None

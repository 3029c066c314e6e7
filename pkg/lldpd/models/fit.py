from enum import StrEnum, auto

from pydantic import Field

from lldpd.config.config import settings
from lldpd.models.mixin import FrozenModel
from lldpd.models.params import Params, Tau


class StartStrategy(StrEnum):
    hl = auto()
    sm = auto()
    moment = auto()


DEFAULT_STARTS: tuple[StartStrategy, ...] = (
    StartStrategy.hl,
    StartStrategy.sm,
    StartStrategy.moment,
)


class FitOptions(FrozenModel):
    tolerance: float = Field(default_factory=lambda: settings.fit.tolerance, gt=0)
    gradient_tolerance: float = Field(
        default_factory=lambda: settings.fit.gradient_tolerance, gt=0
    )
    max_iterations: int = Field(
        default_factory=lambda: settings.fit.max_iterations, ge=1
    )
    simplex_xatol: float = Field(
        default_factory=lambda: settings.fit.simplex_xatol, gt=0
    )
    hessian_step: float = Field(default_factory=lambda: settings.fit.hessian_step, gt=0)
    starts: tuple[Params | StartStrategy, ...] = Field(
        default=DEFAULT_STARTS, min_length=1
    )


class FitResult(FrozenModel):
    params_hat: Params
    tau: Tau
    objective_value: float
    converged: bool
    iterations: int = Field(ge=0)
    gradient_norm: float = Field(ge=0)
    start_used: str
    # 고정된 모수 이름 (프로파일 적합). 결합 적합이면 None
    fixed: str | None = None

from enum import StrEnum

from pydantic import Field

from lldpd.models.mixin import FrozenModel


class CompetitorMethod(StrEnum):
    rm = "RM"
    sm = "SM"
    hl = "HL"


class PlottingPosition(StrEnum):
    # i/(n+1)
    weibull = "weibull"
    # (i-0.5)/n
    hazen = "hazen"


class CompetitorEstimate(FrozenModel):
    alpha_hat: float = Field(gt=0, allow_inf_nan=False)
    beta_hat: float = Field(gt=0, allow_inf_nan=False)
    method: CompetitorMethod

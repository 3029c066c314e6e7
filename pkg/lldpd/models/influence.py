from enum import StrEnum, auto

from pydantic import Field

from lldpd.models.mixin import FrozenModel


class GridScale(StrEnum):
    linear = auto()
    log = auto()


class IFParameter(StrEnum):
    alpha = auto()
    beta = auto()


class IFPoint(FrozenModel):
    x: float = Field(gt=0, allow_inf_nan=False)
    value: float

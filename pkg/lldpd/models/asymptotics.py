from pydantic import Field

from lldpd.models.mixin import FrozenModel
from lldpd.models.params import Params, Tau

Matrix2 = tuple[tuple[float, float], tuple[float, float]]


class AsymptoticMatrices(FrozenModel):
    params: Params
    tau: Tau
    j: Matrix2
    k: Matrix2
    xi: tuple[float, float]
    sandwich: Matrix2
    condition_number: float = Field(ge=1)

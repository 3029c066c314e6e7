import math
from functools import cached_property
from typing import Annotated

import numpy as np
from pydantic import Field, field_validator

from lldpd.models.mixin import FrozenModel

Tau = Annotated[float, Field(ge=0, allow_inf_nan=False)]


class Params(FrozenModel):
    """로그-로지스틱 분포의 모수. alpha는 척도(중앙값), beta는 형상."""

    alpha: float = Field(gt=0, allow_inf_nan=False)
    beta: float = Field(gt=0, allow_inf_nan=False)

    def scaled(self, c: float) -> "Params":
        return Params(alpha=self.alpha * c, beta=self.beta)


class Sample(FrozenModel):
    values: tuple[float, ...] = Field(min_length=1)

    @field_validator("values")
    @classmethod
    def _strictly_positive(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        for i, v in enumerate(values):
            if not math.isfinite(v) or v <= 0:
                raise ValueError(f"관측값은 유한한 양수여야 합니다: values[{i}]={v}")
        return values

    @classmethod
    def of(cls, values) -> "Sample":
        return cls(values=tuple(float(v) for v in np.ravel(values)))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.values, dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def log_array(self) -> np.ndarray:
        arr = np.log(self.array)
        arr.flags.writeable = False
        return arr

    def __len__(self) -> int:
        return len(self.values)

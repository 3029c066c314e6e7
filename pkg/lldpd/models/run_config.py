from enum import StrEnum, auto
from pathlib import Path

from pydantic import Field, model_validator

from lldpd.config.config import settings
from lldpd.models.influence import GridScale, IFParameter
from lldpd.models.mixin import FrozenModel
from lldpd.models.params import Tau
from lldpd.models.simulation import ContaminationCase


class Command(StrEnum):
    fit = auto()
    simulate = auto()
    influence = auto()
    asymptotics = auto()


class OutputFormat(StrEnum):
    text = auto()
    csv = auto()
    json = auto()


class RunConfig(FrozenModel):
    command: Command
    data: Path | None = None
    builtin: str | None = None
    taus: tuple[Tau, ...] = Field(min_length=1)
    format: OutputFormat = OutputFormat.text
    seed: int | None = None
    alpha: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    betas: tuple[float, ...] = (2.0,)
    ns: tuple[int, ...] = (25,)
    reps: int | None = Field(default=None, ge=1)
    case: ContaminationCase = ContaminationCase.clean
    workers: int | None = Field(default=None, ge=1)
    out: Path | None = None
    x_min: float = Field(default=1e-2, gt=0)
    x_max: float = Field(default=1e4, gt=0)
    grid_n: int = Field(default=200, ge=2)
    scale: GridScale = GridScale.log
    parameter: IFParameter = IFParameter.alpha

    @model_validator(mode="after")
    def _check_command_fields(self):
        if self.command == Command.fit:
            if (self.data is None) == (self.builtin is None):
                raise ValueError("--data 와 --builtin 중 정확히 하나를 지정해야 합니다.")
        if any(b <= 0 for b in self.betas):
            raise ValueError("--beta 값은 양수여야 합니다.")
        if any(n < 1 for n in self.ns):
            raise ValueError("--n 값은 1 이상이어야 합니다.")
        if self.command == Command.simulate and self.case != ContaminationCase.clean:
            count = settings.simulation.contaminated_count
            if min(self.ns) <= count:
                raise ValueError(f"Case {int(self.case)}는 n > {count} 이어야 합니다.")
        if self.command == Command.influence and self.x_min >= self.x_max:
            raise ValueError("--x-min 은 --x-max 보다 작아야 합니다.")
        return self

import logging
from typing import Annotated

import pandas as pd
import typer
from pydantic import TypeAdapter

from lldpd.models.params import Params
from lldpd.models.run_config import Command, OutputFormat, RunConfig
from lldpd.routers.options import (
    AlphaOption,
    BetaOption,
    FormatOption,
    OutOption,
    TauOption,
    execute,
    output_format,
    split_values,
)
from lldpd.stats.influence import if_grid, write_grid

logger = logging.getLogger(__name__)

# τ=0 곡선과 비교용 세 곡선
DEFAULT_TAUS: tuple[float, ...] = (0.0, 0.1, 0.3, 0.9)


def run_influence_command(cfg: RunConfig) -> str:
    grids = {}
    for beta in cfg.betas:
        p = Params(alpha=cfg.alpha, beta=beta)
        for tau in cfg.taus:
            label = f"tau={tau:g}" if len(cfg.betas) == 1 else f"beta={beta:g},tau={tau:g}"
            grids[label] = if_grid(
                p, tau, cfg.x_min, cfg.x_max, cfg.grid_n, cfg.scale, cfg.parameter
            )

    if cfg.format == OutputFormat.csv:
        return write_grid(grids)

    frame = pd.DataFrame({"x": [pt.x for pt in next(iter(grids.values()))]})
    for label, points in grids.items():
        frame[label] = [pt.value for pt in points]
    if cfg.format == OutputFormat.json:
        records = frame.to_dict(orient="records")
        body = TypeAdapter(list[dict[str, float]]).dump_json(records, indent=2)
        return body.decode() + "\n"
    return frame.to_string(index=False, float_format=lambda v: f"{v:.6g}") + "\n"


def influence(
    tau: TauOption = None,
    alpha: AlphaOption = 1.0,
    beta: BetaOption = None,
    parameter: Annotated[str, typer.Option("--parameter", help="alpha | beta")] = "alpha",
    x_min: Annotated[float, typer.Option("--x-min", help="격자 시작점")] = 1e-2,
    x_max: Annotated[float, typer.Option("--x-max", help="격자 끝점")] = 1e4,
    grid_n: Annotated[int, typer.Option("--grid-n", help="격자 점 개수")] = 200,
    scale: Annotated[str, typer.Option("--scale", help="linear | log")] = "log",
    fmt: FormatOption = None,
    out: OutOption = None,
) -> None:
    """영향함수 격자를 x 열 + τ 별 열의 구분자 텍스트로 내보냅니다."""

    def build() -> RunConfig:
        return RunConfig(
            command=Command.influence,
            taus=split_values(tau, float) or DEFAULT_TAUS,
            alpha=alpha,
            betas=split_values(beta, float) or (2.0,),
            parameter=parameter,
            x_min=x_min,
            x_max=x_max,
            grid_n=grid_n,
            scale=scale,
            format=output_format(fmt),
            out=out,
        )

    execute(build, run_influence_command)

import logging
from typing import Annotated, Optional

import typer

from lldpd.config.config import settings
from lldpd.models.run_config import Command, RunConfig
from lldpd.models.simulation import DPD_TAU_GRID, default_estimators
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
from lldpd.stats.simulation import STUDY_BETAS, STUDY_NS, emit_table, run_study

logger = logging.getLogger(__name__)


def run_simulate_command(cfg: RunConfig) -> str:
    estimators = default_estimators(tuple(t for t in cfg.taus if t > 0))
    rows = run_study(
        alpha=cfg.alpha,
        betas=cfg.betas,
        ns=cfg.ns,
        case=cfg.case,
        estimators=estimators,
        replications=cfg.reps,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    return emit_table(rows, cfg.format)


def simulate(
    tau: TauOption = None,
    alpha: AlphaOption = 1.0,
    beta: BetaOption = None,
    n: Annotated[
        Optional[list[str]], typer.Option("--n", help="표본 크기 (반복 또는 쉼표 목록)")
    ] = None,
    reps: Annotated[Optional[int], typer.Option("--reps", help="반복 횟수 M")] = None,
    case: Annotated[int, typer.Option("--case", help="오염 케이스 1~5")] = 1,
    seed: Annotated[Optional[int], typer.Option("--seed", help="마스터 시드")] = None,
    workers: Annotated[
        Optional[int], typer.Option("--workers", help="작업 프로세스 수 (기본: CPU 수)")
    ] = None,
    fmt: FormatOption = None,
    out: OutOption = None,
) -> None:
    """몬테카를로 실험으로 MLE, DPD_τ, RM, SM, HL 의 Bias/RMSE 표를 만듭니다."""

    def build() -> RunConfig:
        return RunConfig(
            command=Command.simulate,
            taus=split_values(tau, float) or DPD_TAU_GRID,
            alpha=alpha,
            betas=split_values(beta, float) or STUDY_BETAS,
            ns=split_values(n, int) or STUDY_NS,
            reps=reps or settings.simulation.replications,
            case=case,
            seed=settings.simulation.seed if seed is None else seed,
            workers=workers,
            format=output_format(fmt),
            out=out,
        )

    execute(build, run_simulate_command)

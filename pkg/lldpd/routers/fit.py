import logging
from pathlib import Path
from typing import Annotated, Optional

import typer
from pydantic import BaseModel

from lldpd.datasets import builtin as builtin_sample
from lldpd.datasets import ingest
from lldpd.exception_handler import ConvergenceError, DomainError
from lldpd.models.run_config import Command, RunConfig
from lldpd.routers.options import (
    FormatOption,
    OutOption,
    TauOption,
    execute,
    output_format,
    render,
    split_values,
)
from lldpd.stats.asymptotics import standard_errors
from lldpd.stats.fit import fit_joint

logger = logging.getLogger(__name__)

# MLE 와 실데이터 표의 DPD 격자
DEFAULT_TAUS: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


class FitRow(BaseModel):
    estimator: str
    tau: float
    alpha_hat: float
    beta_hat: float
    se_alpha: float | None
    se_beta: float | None
    objective_value: float
    converged: bool
    iterations: int
    gradient_norm: float
    start_used: str


def _label(tau: float) -> str:
    return "MLE" if tau == 0 else f"DPD_{tau:g}"


def run_fit_command(cfg: RunConfig) -> str:
    s = builtin_sample(cfg.builtin) if cfg.builtin is not None else ingest(cfg.data)
    logger.info("적합 시작: n=%d, tau=%s", len(s), list(cfg.taus))

    rows: list[FitRow] = []
    for tau in cfg.taus:
        result = fit_joint(s, tau)
        try:
            se_alpha, se_beta = standard_errors(result.params_hat, tau, len(s))
        except DomainError as e:
            logger.warning("tau=%g 표준오차를 계산할 수 없습니다: %s", tau, e.detail)
            se_alpha = se_beta = None
        rows.append(
            FitRow(
                estimator=_label(tau),
                tau=tau,
                alpha_hat=result.params_hat.alpha,
                beta_hat=result.params_hat.beta,
                se_alpha=se_alpha,
                se_beta=se_beta,
                objective_value=result.objective_value,
                converged=result.converged,
                iterations=result.iterations,
                gradient_norm=result.gradient_norm,
                start_used=result.start_used,
            )
        )

    document = render(rows, FitRow, cfg.format)
    failed = [row.estimator for row in rows if not row.converged]
    if failed:
        raise ConvergenceError(f"수렴하지 않은 적합이 있습니다: {', '.join(failed)}", document)
    return document


def fit(
    tau: TauOption = None,
    data: Annotated[Optional[Path], typer.Option("--data", help="관측값 파일 경로")] = None,
    builtin: Annotated[
        Optional[str], typer.Option("--builtin", help="내장 데이터셋 이름 (예: flood-scotland)")
    ] = None,
    fmt: FormatOption = None,
    out: OutOption = None,
) -> None:
    """데이터에 MDPDE(τ=0 이면 MLE)를 적합하고 추정값과 표준오차를 출력합니다."""

    def build() -> RunConfig:
        return RunConfig(
            command=Command.fit,
            data=data,
            builtin=builtin,
            taus=split_values(tau, float) or DEFAULT_TAUS,
            format=output_format(fmt),
            out=out,
        )

    execute(build, run_fit_command)

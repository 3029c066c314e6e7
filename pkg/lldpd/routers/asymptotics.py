import logging

from pydantic import BaseModel

from lldpd.models.params import Params
from lldpd.models.run_config import Command, RunConfig
from lldpd.routers.options import (
    AlphaOption,
    BetaOption,
    FormatOption,
    OutOption,
    TauOption,
    execute,
    output_format,
    render,
    split_values,
)
from lldpd.stats import asymptotics

logger = logging.getLogger(__name__)

DEFAULT_TAUS: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


class AsymptoticsRow(BaseModel):
    alpha: float
    beta: float
    tau: float
    j_aa: float
    j_ab: float
    j_bb: float
    k_aa: float
    k_ab: float
    k_bb: float
    xi_alpha: float
    xi_beta: float
    v_aa: float
    v_ab: float
    v_bb: float
    condition_number: float
    marginal_var_alpha: float
    marginal_var_beta: float
    efficiency_alpha: float
    efficiency_beta: float


def run_asymptotics_command(cfg: RunConfig) -> str:
    rows: list[AsymptoticsRow] = []
    for beta in cfg.betas:
        p = Params(alpha=cfg.alpha, beta=beta)
        for tau in cfg.taus:
            m = asymptotics.sandwich(p, tau)
            eff_alpha, eff_beta = asymptotics.relative_efficiency(p, tau)
            rows.append(
                AsymptoticsRow(
                    alpha=p.alpha,
                    beta=p.beta,
                    tau=tau,
                    j_aa=m.j[0][0],
                    j_ab=m.j[0][1],
                    j_bb=m.j[1][1],
                    k_aa=m.k[0][0],
                    k_ab=m.k[0][1],
                    k_bb=m.k[1][1],
                    xi_alpha=m.xi[0],
                    xi_beta=m.xi[1],
                    v_aa=m.sandwich[0][0],
                    v_ab=m.sandwich[0][1],
                    v_bb=m.sandwich[1][1],
                    condition_number=m.condition_number,
                    marginal_var_alpha=asymptotics.marginal_variance_alpha(p, tau),
                    marginal_var_beta=asymptotics.marginal_variance_beta(p, tau),
                    efficiency_alpha=eff_alpha,
                    efficiency_beta=eff_beta,
                )
            )
    return render(rows, AsymptoticsRow, cfg.format)


def asymptotics_command(
    tau: TauOption = None,
    alpha: AlphaOption = 1.0,
    beta: BetaOption = None,
    fmt: FormatOption = None,
    out: OutOption = None,
) -> None:
    """(α, β, τ) 별 J, K, ξ, 샌드위치 공분산, 주변 분산과 상대 효율을 출력합니다."""

    def build() -> RunConfig:
        return RunConfig(
            command=Command.asymptotics,
            taus=split_values(tau, float) or DEFAULT_TAUS,
            alpha=alpha,
            betas=split_values(beta, float) or (2.0,),
            format=output_format(fmt),
            out=out,
        )

    execute(build, run_asymptotics_command)

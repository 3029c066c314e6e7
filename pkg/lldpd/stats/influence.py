"""
MDPDE 영향함수 (influence function).

    IF(x) = J_τ⁻¹ (u(x) f(x)^τ - ξ_τ)

단일 모수는 스칼라 J_τ(α), J_τ(β) 로, 결합 추정은 2x2 J_τ(α, β) 로 정규화합니다.
τ > 0 이면 f^τ 가 점수함수의 로그 성장을 눌러 IF 가 유계입니다.
"""

import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import TextIO

import numpy as np
import pandas as pd

from lldpd.exception_handler import DomainError
from lldpd.models.influence import GridScale, IFParameter, IFPoint
from lldpd.models.params import Params
from lldpd.stats import asymptotics
from lldpd.stats.dpd import check_tau
from lldpd.stats.loglogistic import log_pdf_values, score_values

logger = logging.getLogger(__name__)


def _check_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"오염 위치 x는 유한한 양수여야 합니다: x={x}")
    return arr


def _psi(p: Params, tau: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """단일 관측 추정방정식 ψ(x) = u f^τ - ξ"""
    u_alpha, u_beta = score_values(x, p.alpha, p.beta)
    if tau == 0:
        return u_alpha, u_beta
    weight = np.exp(tau * log_pdf_values(x, p.alpha, p.beta))
    return (
        u_alpha * weight - asymptotics.xi_alpha_value(p.alpha, p.beta, tau),
        u_beta * weight - asymptotics.xi_beta_value(p.alpha, p.beta, tau),
    )


def influence_values(p: Params, tau: float, x, parameter: IFParameter) -> np.ndarray:
    tau = check_tau(tau)
    arr = _check_x(x)
    psi_alpha, psi_beta = _psi(p, tau, arr)
    if parameter == IFParameter.alpha:
        return psi_alpha / asymptotics.j_alpha_value(p.alpha, p.beta, tau)
    return psi_beta / asymptotics.j_beta_value(p.alpha, p.beta, tau)


def if_alpha(p: Params, tau: float, x: float) -> float:
    """β 를 알 때 α 의 MDPDE 영향함수"""
    return float(influence_values(p, tau, x, IFParameter.alpha))


def if_beta(p: Params, tau: float, x: float) -> float:
    """α 를 알 때 β 의 MDPDE 영향함수. τ=0 이면 x → ∞ 에서 -∞ 로 발산"""
    return float(influence_values(p, tau, x, IFParameter.beta))


def if_joint(p: Params, tau: float, x: float) -> tuple[float, float]:
    tau = check_tau(tau)
    arr = _check_x(x)
    psi = np.array([float(v) for v in _psi(p, tau, arr)])
    j_inv = asymptotics.inverse_2x2(asymptotics.j_matrix_value(p.alpha, p.beta, tau))
    out = j_inv @ psi
    return float(out[0]), float(out[1])


def grid_points(x_min: float, x_max: float, n: int, scale: GridScale) -> np.ndarray:
    if not (0 < x_min < x_max):
        raise DomainError(f"0 < x_min < x_max 이어야 합니다: x_min={x_min}, x_max={x_max}")
    if n < 2:
        raise DomainError(f"격자 점 개수는 2 이상이어야 합니다: n={n}")
    if scale == GridScale.log:
        return np.geomspace(x_min, x_max, n)
    return np.linspace(x_min, x_max, n)


def if_grid(
    p: Params,
    tau: float,
    x_min: float,
    x_max: float,
    n: int,
    scale: GridScale = GridScale.log,
    parameter: IFParameter = IFParameter.alpha,
) -> list[IFPoint]:
    xs = grid_points(x_min, x_max, n, scale)
    values = influence_values(p, tau, xs, parameter)
    return [IFPoint(x=float(x), value=float(v)) for x, v in zip(xs, values, strict=True)]


def gross_error_sensitivity(
    p: Params,
    tau: float,
    parameter: IFParameter = IFParameter.alpha,
    x_min: float = 1e-8,
    x_max: float = 1e8,
    n: int = 2001,
) -> float:
    """로그 격자 위 sup |IF|. τ=0 인 β 는 x_max 가 커질수록 끝없이 커집니다."""
    xs = grid_points(x_min, x_max, n, GridScale.log)
    return float(np.max(np.abs(influence_values(p, tau, xs, parameter))))


def write_grid(
    grids: Mapping[str, Sequence[IFPoint]], out: Path | TextIO | None = None
) -> str:
    """
    같은 x 격자 위의 여러 IF 열을 x 열 + 라벨별 열의 CSV 로 내보냅니다.
    out 을 주면 파일(또는 스트림)에도 씁니다.
    """
    if not grids:
        raise DomainError("내보낼 격자가 없습니다.")
    columns = iter(grids.items())
    first_label, first = next(columns)
    xs = [pt.x for pt in first]
    frame = pd.DataFrame({"x": xs, first_label: [pt.value for pt in first]})
    for label, points in columns:
        if [pt.x for pt in points] != xs:
            raise DomainError(f"'{label}' 열의 x 격자가 다릅니다.")
        frame[label] = [pt.value for pt in points]

    text = frame.to_csv(index=False)
    if isinstance(out, Path):
        out.write_text(text, encoding="utf-8")
        logger.info("IF 격자를 저장했습니다: %s (%d 행)", out, len(frame))
    elif out is not None:
        out.write(text)
    return text

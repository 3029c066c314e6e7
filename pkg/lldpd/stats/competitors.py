"""
비교 대상 로버스트 추정량: 반복 중앙값(RM), 표본 중앙값(SM), Hodges-Lehmann/Shamos(HL).

모두 z = log x 위에서 정의되며, log X ~ Logistic(log α, 1/β) 구조를 이용합니다.
짝수 개 중앙값은 가운데 두 값의 평균(np.median)입니다.
"""

import logging
import math

import numpy as np

from lldpd.exception_handler import DegenerateSampleError, DomainError
from lldpd.models.competitors import (
    CompetitorEstimate,
    CompetitorMethod,
    PlottingPosition,
)
from lldpd.models.params import Sample

logger = logging.getLogger(__name__)

# Φ^{-1}(3/4)
NORMAL_Q3 = 0.674489750196082


def _plotting_positions(n: int, position: PlottingPosition) -> np.ndarray:
    i = np.arange(1, n + 1, dtype=float)
    if position == PlottingPosition.weibull:
        return i / (n + 1.0)
    return (i - 0.5) / n


def _finish(alpha_log: float, beta_hat: float, method: CompetitorMethod) -> CompetitorEstimate:
    if not (math.isfinite(beta_hat) and beta_hat > 0 and math.isfinite(alpha_log)):
        raise DegenerateSampleError(
            f"{method} 추정값이 유효하지 않습니다: log α={alpha_log}, β={beta_hat}"
        )
    return CompetitorEstimate(
        alpha_hat=math.exp(alpha_log), beta_hat=beta_hat, method=method
    )


def estimate_rm(
    s: Sample, plotting_position: PlottingPosition = PlottingPosition.weibull
) -> CompetitorEstimate:
    n = len(s)
    if n < 3:
        raise DegenerateSampleError(f"RM 추정에는 n >= 3 이 필요합니다: n={n}")
    z = np.sort(s.log_array)
    F = _plotting_positions(n, plotting_position)  # noqa: N806
    y = np.log(F / (1.0 - F))

    dz = z[:, None] - z[None, :]
    dy = y[:, None] - y[None, :]
    # 대각선(j == i)과 z 동률 쌍은 기울기가 정의되지 않으므로 제외
    valid = dz != 0
    inner = np.empty(n)
    for i in range(n):
        slopes = dy[i, valid[i]] / dz[i, valid[i]]
        if slopes.size == 0:
            raise DegenerateSampleError(
                f"RM: {i + 1}번째 순서통계량에 대해 정의된 기울기가 없습니다."
            )
        inner[i] = np.median(slopes)
    b1 = float(np.median(inner))
    if b1 == 0:
        raise DegenerateSampleError("RM: 기울기 b1 = 0 이므로 α를 정의할 수 없습니다.")
    b0 = float(np.median(y - b1 * z))
    return _finish(-b0 / b1, b1, CompetitorMethod.rm)


def estimate_sm(s: Sample) -> CompetitorEstimate:
    if len(s) < 2:
        raise DegenerateSampleError(f"SM 추정에는 n >= 2 가 필요합니다: n={len(s)}")
    z = s.log_array
    mu = float(np.median(z))
    mad = float(np.median(np.abs(z - mu)))
    if mad == 0:
        raise DegenerateSampleError("SM: 중앙절대편차(MAD)가 0 입니다.")
    return _finish(mu, NORMAL_Q3 / mad, CompetitorMethod.sm)


def estimate_hl(s: Sample) -> CompetitorEstimate:
    n = len(s)
    if n < 2:
        raise DegenerateSampleError(f"HL 추정에는 n >= 2 가 필요합니다: n={n}")
    z = s.log_array
    i, j = np.triu_indices(n, k=1)
    mu = float(np.median(0.5 * (z[i] + z[j])))
    spread = float(np.median(np.abs(z[i] - z[j])))
    if spread == 0:
        raise DegenerateSampleError("HL: 모든 쌍의 차이가 0 입니다.")
    return _finish(mu, math.sqrt(2.0) * NORMAL_Q3 / spread, CompetitorMethod.hl)


def estimate(
    method: CompetitorMethod,
    s: Sample,
    plotting_position: PlottingPosition = PlottingPosition.weibull,
) -> CompetitorEstimate:
    match method:
        case CompetitorMethod.rm:
            return estimate_rm(s, plotting_position)
        case CompetitorMethod.sm:
            return estimate_sm(s)
        case CompetitorMethod.hl:
            return estimate_hl(s)
    raise DomainError(f"알 수 없는 추정 방법입니다: {method}")

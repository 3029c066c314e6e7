"""
DPD 목적함수 H_{n,τ} 와 해석적 기울기.

    H_{n,τ}(α, β) = (1 + 1/τ) (1/n) Σ f(X_i)^τ - ∫ f^{1+τ} dx - 1/τ,   τ > 0
    H_{n,0}(α, β) = (1/n) Σ log f(X_i)

상수항은 -1/τ 로 두어 τ → 0 극한이 로그우도와 일치하도록 합니다 (최대점은 동일).
∫ f^{1+τ} dx = (β/α)^τ B(a, b),  a = (βτ+τ+β)/β,  b = (βτ-τ+β)/β.
"""

import math

import numpy as np
from scipy import special

from lldpd.exception_handler import DomainError
from lldpd.models.params import Params, Sample
from lldpd.stats.loglogistic import log_pdf_values, score_values


def check_tau(tau: float) -> float:
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise DomainError(f"tau는 0 이상이어야 합니다: tau={tau}")
    return tau


def beta_arguments(beta: float, tau: float) -> tuple[float, float]:
    """베타 함수 인자 (a, b). b > 0 ⟺ β(τ+1) > τ"""
    a = 1.0 + tau + tau / beta
    b = 1.0 + tau - tau / beta
    if b <= 0:
        raise DomainError(
            f"β(τ+1) > τ 조건을 만족하지 않습니다: beta={beta}, tau={tau}"
        )
    return a, b


def log_integral_term_value(alpha: float, beta: float, tau: float) -> float:
    a, b = beta_arguments(beta, tau)
    return tau * (math.log(beta) - math.log(alpha)) + float(special.betaln(a, b))


def integral_term_gradient_value(
    alpha: float, beta: float, tau: float
) -> tuple[float, float]:
    """∫ f^{1+τ} dx 의 (α, β) 편미분. β 쪽은 τβ^{τ-1}α^{-τ}B·[1 + (Ψ(b)-Ψ(a))/β]"""
    if tau == 0:
        return 0.0, 0.0
    a, b = beta_arguments(beta, tau)
    value = math.exp(log_integral_term_value(alpha, beta, tau))
    d_alpha = -tau / alpha * value
    d_beta = value * tau / beta * (
        1.0 + (float(special.digamma(b)) - float(special.digamma(a))) / beta
    )
    return d_alpha, d_beta


def objective_value(x: np.ndarray, alpha: float, beta: float, tau: float) -> float:
    """검증 없는 H_{n,τ} (최적화 내부 루프용)"""
    lf = log_pdf_values(x, alpha, beta)
    if tau == 0:
        return float(np.mean(lf))
    # (1+1/τ)m - 1/τ = (m-1)/τ + m, m-1 = mean(expm1(τ log f))
    em1 = np.expm1(tau * lf)
    mean_power = 1.0 + float(np.mean(em1))
    return (
        float(np.mean(em1)) / tau
        + mean_power
        - math.exp(log_integral_term_value(alpha, beta, tau))
    )


def gradient_value(x: np.ndarray, alpha: float, beta: float, tau: float) -> np.ndarray:
    """(∂H/∂α, ∂H/∂β) = (1+τ)·mean(f^τ u) - ∂∫f^{1+τ}"""
    u_alpha, u_beta = score_values(x, alpha, beta)
    if tau == 0:
        return np.array([np.mean(u_alpha), np.mean(u_beta)])
    weight = np.exp(tau * log_pdf_values(x, alpha, beta))
    d_alpha, d_beta = integral_term_gradient_value(alpha, beta, tau)
    return np.array(
        [
            (1.0 + tau) * np.mean(weight * u_alpha) - d_alpha,
            (1.0 + tau) * np.mean(weight * u_beta) - d_beta,
        ]
    )


def integral_term(p: Params, tau: float) -> float:
    tau = check_tau(tau)
    return math.exp(log_integral_term_value(p.alpha, p.beta, tau))


def objective(s: Sample, p: Params, tau: float) -> float:
    tau = check_tau(tau)
    if tau > 0:
        beta_arguments(p.beta, tau)
    return objective_value(s.array, p.alpha, p.beta, tau)


def gradient(s: Sample, p: Params, tau: float) -> tuple[float, float]:
    tau = check_tau(tau)
    g = gradient_value(s.array, p.alpha, p.beta, tau)
    return float(g[0]), float(g[1])

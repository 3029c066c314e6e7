"""
MDPDE 점근 공분산의 닫힌 형태.

t = (x/α)^β 치환으로 모든 적분이 w(t) = t^m (1+t)^{-s} 가중 적분이 되고,
m = τ(β-1)/β, s = 2(1+τ) 일 때 specfun 의 I1~I3 조합으로 정리됩니다.

    ∫ g(x) f(x)^{1+τ} dx = (β/α)^τ ∫ g(t) t^m (1+t)^{-s} dt

점수함수는 r = (t-1)/(t+1) = 1 - 2/(1+t), L = log t 로
u_α = (β/α) r, u_β = (1 - L r)/β 입니다.
"""

import logging
import math

import numpy as np

from lldpd.exception_handler import ConditioningError, DomainError
from lldpd.models.asymptotics import AsymptoticMatrices
from lldpd.models.params import Params
from lldpd.stats.dpd import beta_arguments, check_tau
from lldpd.stats.specfun import beta_fn, digamma, identity_I1, identity_I2, identity_I3

logger = logging.getLogger(__name__)

PI2 = math.pi**2


def _m_s(beta: float, tau: float) -> tuple[float, float]:
    # beta_arguments 가 β(1+τ) > τ 조건을 검사
    beta_arguments(beta, tau)
    return tau * (beta - 1.0) / beta, 2.0 * (1.0 + tau)


def _weight(alpha: float, beta: float, tau: float) -> float:
    return (beta / alpha) ** tau


def j_alpha_value(alpha: float, beta: float, tau: float) -> float:
    a, b = beta_arguments(beta, tau)
    correction = (
        2.0
        * (beta * tau + tau + beta)
        * (-tau * beta - beta + tau)
        / (beta**2 * (tau + 1.0) * (2.0 * tau + 3.0))
    )
    return (beta / alpha) ** (tau + 2.0) * beta_fn(a, b) * (1.0 + correction)


def xi_alpha_value(alpha: float, beta: float, tau: float) -> float:
    if tau == 0:
        return 0.0
    a, b = beta_arguments(beta, tau)
    return (beta / alpha) ** (tau + 1.0) * beta_fn(a, b) * (-tau / (beta * (1.0 + tau)))


def j_beta_value(alpha: float, beta: float, tau: float) -> float:
    """∫ u_β² f^{1+τ} dx, 여섯 항 (L r)² 전개"""
    m, s = _m_s(beta, tau)
    terms = (
        identity_I1(m, s)
        - 2.0 * identity_I2(m, s)
        + 4.0 * identity_I2(m, s + 1)
        + identity_I3(m, s)
        - 4.0 * identity_I3(m, s + 1)
        + 4.0 * identity_I3(m, s + 2)
    )
    return _weight(alpha, beta, tau) / beta**2 * terms


def xi_beta_value(alpha: float, beta: float, tau: float) -> float:
    if tau == 0:
        return 0.0
    a, b = beta_arguments(beta, tau)
    d = digamma(b) - digamma(a)
    return (
        beta ** (tau - 1.0)
        / alpha**tau
        * (tau / (tau + 1.0))
        * beta_fn(a, b)
        * (1.0 + d / beta)
    )


def j_cross_value(alpha: float, beta: float, tau: float) -> float:
    """∫ u_α u_β f^{1+τ} dx"""
    m, s = _m_s(beta, tau)
    terms = (
        identity_I1(m, s)
        - 2.0 * identity_I1(m, s + 1)
        - identity_I2(m, s)
        + 4.0 * identity_I2(m, s + 1)
        - 4.0 * identity_I2(m, s + 2)
    )
    return _weight(alpha, beta, tau) / alpha * terms


def j_matrix_value(alpha: float, beta: float, tau: float) -> np.ndarray:
    jc = j_cross_value(alpha, beta, tau)
    return np.array(
        [
            [j_alpha_value(alpha, beta, tau), jc],
            [jc, j_beta_value(alpha, beta, tau)],
        ]
    )


def xi_vector_value(alpha: float, beta: float, tau: float) -> np.ndarray:
    return np.array([xi_alpha_value(alpha, beta, tau), xi_beta_value(alpha, beta, tau)])


def inverse_2x2(j: np.ndarray) -> np.ndarray:
    """양의 정부호 2x2 대칭 행렬의 역행렬. 특이하거나 정부호가 아니면 ConditioningError"""
    det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
    scale = float(np.max(np.abs(j))) ** 2
    if not math.isfinite(det) or abs(det) <= 1e-300 * max(scale, 1.0):
        raise ConditioningError(f"J 행렬이 특이합니다: det={det}")
    if j[0, 0] <= 0 or det <= 0:
        raise ConditioningError(f"J 행렬이 양의 정부호가 아닙니다: J={j.tolist()}, det={det}")
    return np.array([[j[1, 1], -j[0, 1]], [-j[1, 0], j[0, 0]]]) / det


def _symmetric(mat: np.ndarray) -> tuple[tuple[float, float], tuple[float, float]]:
    off = 0.5 * float(mat[0, 1] + mat[1, 0])
    return ((float(mat[0, 0]), off), (off, float(mat[1, 1])))


def j_alpha(p: Params, tau: float) -> float:
    return j_alpha_value(p.alpha, p.beta, check_tau(tau))


def xi_alpha(p: Params, tau: float) -> float:
    return xi_alpha_value(p.alpha, p.beta, check_tau(tau))


def k_alpha(p: Params, tau: float) -> float:
    tau = check_tau(tau)
    return j_alpha_value(p.alpha, p.beta, 2.0 * tau) - xi_alpha_value(p.alpha, p.beta, tau) ** 2


def j_beta(p: Params, tau: float) -> float:
    return j_beta_value(p.alpha, p.beta, check_tau(tau))


def xi_beta(p: Params, tau: float) -> float:
    return xi_beta_value(p.alpha, p.beta, check_tau(tau))


def k_beta(p: Params, tau: float) -> float:
    tau = check_tau(tau)
    return j_beta_value(p.alpha, p.beta, 2.0 * tau) - xi_beta_value(p.alpha, p.beta, tau) ** 2


def j_cross(p: Params, tau: float) -> float:
    return j_cross_value(p.alpha, p.beta, check_tau(tau))


def sandwich(p: Params, tau: float) -> AsymptoticMatrices:
    """J^{-1} K J^{-1}, K = J_{2τ} - ξ ξᵀ"""
    tau = check_tau(tau)
    j = j_matrix_value(p.alpha, p.beta, tau)
    xi = xi_vector_value(p.alpha, p.beta, tau)
    k = j_matrix_value(p.alpha, p.beta, 2.0 * tau) - np.outer(xi, xi)
    j_inv = inverse_2x2(j)
    cov = j_inv @ k @ j_inv

    eig = np.linalg.eigvalsh(j)
    condition_number = float(eig[-1] / eig[0])
    if condition_number > 1e12:
        logger.warning("J 의 조건수가 큽니다: %.3g (params=%s, tau=%g)", condition_number, p, tau)

    return AsymptoticMatrices(
        params=p,
        tau=tau,
        j=_symmetric(j),
        k=_symmetric(k),
        xi=(float(xi[0]), float(xi[1])),
        sandwich=_symmetric(cov),
        condition_number=max(condition_number, 1.0),
    )


def marginal_variance_alpha(p: Params, tau: float) -> float:
    """β 를 알 때 √n(α̂ - α) 의 점근 분산 K_τ(α) / J_τ(α)²"""
    return k_alpha(p, tau) / j_alpha(p, tau) ** 2


def marginal_variance_beta(p: Params, tau: float) -> float:
    """α 를 알 때 √n(β̂ - β) 의 점근 분산 K_τ(β) / J_τ(β)²"""
    return k_beta(p, tau) / j_beta(p, tau) ** 2


def fisher_inverse_diagonal(p: Params) -> tuple[float, float]:
    return 3.0 * p.alpha**2 / p.beta**2, 9.0 * p.beta**2 / (3.0 + PI2)


def relative_efficiency(p: Params, tau: float) -> tuple[float, float]:
    cov = sandwich(p, tau).sandwich
    fa, fb = fisher_inverse_diagonal(p)
    return fa / cov[0][0], fb / cov[1][1]


def standard_errors(p: Params, tau: float, n: int) -> tuple[float, float]:
    if n < 1:
        raise DomainError(f"n 은 1 이상이어야 합니다: n={n}")
    cov = sandwich(p, tau).sandwich
    return math.sqrt(cov[0][0] / n), math.sqrt(cov[1][1] / n)

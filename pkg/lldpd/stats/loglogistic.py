"""
로그-로지스틱 분포

    f(x) = β α^β x^(β-1) / (x^β + α^β)^2,  x > 0

log f 를 기본 연산으로 두고 나머지(pdf, 점수함수, 밀도 거듭제곱)는 여기서 파생합니다.
β=10 같은 큰 형상 모수에서도 x^β 를 직접 계산하지 않습니다.
"""

import math

import numpy as np
from scipy import special

from lldpd.exception_handler import DomainError, MomentDoesNotExistError
from lldpd.models.params import Params, Sample
from lldpd.stats.specfun import beta_fn

# 역변환 표본추출에서 u가 정확히 0 또는 1이 되는 것을 막는 경계
_U_EPS = np.finfo(float).tiny


def _check_support(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"x는 유한한 양수여야 합니다: x={x}")
    return arr


def log_pdf_values(x: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """검증 없이 log f 를 계산 (최적화 내부 루프용)"""
    y = np.log(x) - math.log(alpha)
    return (
        math.log(beta)
        - math.log(alpha)
        + (beta - 1.0) * y
        - 2.0 * np.logaddexp(0.0, beta * y)
    )


def score_values(
    x: np.ndarray, alpha: float, beta: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    관측치별 점수함수 (∂ log f/∂α, ∂ log f/∂β).
    t = (x/α)^β 일 때 (t-1)/(t+1) = tanh(β·log(x/α)/2) 로 계산합니다.
    """
    y = np.log(x) - math.log(alpha)
    r = np.tanh(0.5 * beta * y)
    return (beta / alpha) * r, 1.0 / beta - y * r


def log_pdf(p: Params, x):
    arr = _check_support(x)
    out = log_pdf_values(arr, p.alpha, p.beta)
    return float(out) if np.ndim(out) == 0 else out


def pdf(p: Params, x):
    out = np.exp(log_pdf(p, x))
    return float(out) if np.ndim(out) == 0 else out


def cdf(p: Params, x):
    arr = _check_support(x)
    # x^β/(x^β+α^β) = expit(β·log(x/α))
    out = special.expit(p.beta * (np.log(arr) - math.log(p.alpha)))
    return float(out) if np.ndim(out) == 0 else out


def quantile(p: Params, u):
    arr = np.asarray(u, dtype=float)
    if not np.all((arr > 0) & (arr < 1)):
        raise DomainError(f"u는 (0, 1) 구간에 있어야 합니다: u={u}")
    out = p.alpha * np.exp(special.logit(arr) / p.beta)
    return float(out) if np.ndim(out) == 0 else out


def draw(p: Params, n: int, rng: np.random.Generator) -> np.ndarray:
    """역변환 추출. simulation 모듈이 오염값 생성에도 같은 경로를 사용합니다."""
    if n < 1:
        raise DomainError(f"표본 크기는 1 이상이어야 합니다: n={n}")
    u = np.clip(rng.random(n), _U_EPS, 1.0 - np.finfo(float).epsneg)
    return np.atleast_1d(quantile(p, u))


def sample(p: Params, n: int, rng: np.random.Generator) -> Sample:
    return Sample.of(draw(p, n, rng))


def raw_moment(p: Params, k: int) -> float:
    """E[X^k] = α^k B(1 - k/β, 1 + k/β), k < β 일 때만 존재"""
    if k < 1 or int(k) != k:
        raise DomainError(f"k는 양의 정수여야 합니다: k={k}")
    if k >= p.beta:
        raise MomentDoesNotExistError(
            f"{k}차 적률은 k < β 일 때만 존재합니다 (β={p.beta})."
        )
    return p.alpha**k * beta_fn(1.0 - k / p.beta, 1.0 + k / p.beta)

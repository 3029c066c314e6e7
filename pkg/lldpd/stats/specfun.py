"""
특수함수(로그감마, 베타, 디감마, 트리감마)와 세 가지 적분 항등식.

    I1(m, s) = ∫_0^∞ t^m / (1+t)^s dt             = B(s-m-1, m+1)
    I2(m, s) = ∫_0^∞ log(t) t^m / (1+t)^s dt      = B · {Ψ(m+1) - Ψ(s-m-1)}
    I3(m, s) = ∫_0^∞ log(t)^2 t^m / (1+t)^s dt    = B · {(Ψ(m+1) - Ψ(s-m-1))^2 + Ψ'(m+1) + Ψ'(s-m-1)}

점근 공분산과 영향함수의 닫힌 형태는 모두 이 세 항등식의 조합입니다.
"""

import math

from scipy import special

from lldpd.exception_handler import DomainError


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name}는 유한한 양수여야 합니다: {name}={x}")
    return x


def log_gamma(x: float) -> float:
    return float(special.gammaln(_check_positive("x", x)))


def log_beta(a: float, b: float) -> float:
    return float(special.betaln(_check_positive("a", a), _check_positive("b", b)))


def beta_fn(a: float, b: float) -> float:
    # 로그 공간에서 계산 후 마지막에 지수화
    return math.exp(log_beta(a, b))


def digamma(x: float) -> float:
    return float(special.digamma(_check_positive("x", x)))


def trigamma(x: float) -> float:
    return float(special.polygamma(1, _check_positive("x", x)))


def _beta_arguments(m: float, s: float) -> tuple[float, float]:
    """I1~I3가 공유하는 베타 함수 인자 (a, b) = (s-m-1, m+1)"""
    a, b = s - m - 1.0, m + 1.0
    if not (a > 0 and b > 0):
        raise DomainError(
            f"베타 함수 인자가 양수가 아닙니다: s-m-1={a}, m+1={b} (m={m}, s={s})"
        )
    return a, b


def identity_I1(m: float, s: float) -> float:  # noqa: N802
    a, b = _beta_arguments(m, s)
    return beta_fn(a, b)


def identity_I2(m: float, s: float) -> float:  # noqa: N802
    a, b = _beta_arguments(m, s)
    return beta_fn(a, b) * (digamma(b) - digamma(a))


def identity_I3(m: float, s: float) -> float:  # noqa: N802
    a, b = _beta_arguments(m, s)
    d = digamma(b) - digamma(a)
    return beta_fn(a, b) * (d * d + trigamma(b) + trigamma(a))

import math
from collections.abc import Callable

import numpy as np
import pytest
from scipy import integrate
from typer.testing import CliRunner

from lldpd.datasets import builtin
from lldpd.models.params import Params, Sample


@pytest.fixture(scope="session")
def flood_sample() -> Sample:
    return builtin("flood-scotland")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def cli_runner() -> CliRunner:
    return CliRunner()


# ── 적분 오라클 (테스트 전용, 운영 코드 경로는 닫힌 형태만 사용) ─────────────────


@pytest.fixture(scope="session")
def t_integral() -> Callable[..., float]:
    """
    ∫_0^∞ g(t) t^m (1+t)^{-s} dt 를 u = t/(1+t) 치환 후 적응 구적법으로 계산합니다.
    """

    def _integrate(m: float, s: float, g: Callable[[float], float] = lambda _t: 1.0) -> float:
        def integrand(u: float) -> float:
            if u <= 0.0 or u >= 1.0:
                return 0.0
            t = u / (1.0 - u)
            return g(t) * u**m * (1.0 - u) ** (s - m - 2.0)

        value, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-11, limit=500)
        return value

    return _integrate


@pytest.fixture(scope="session")
def model_integral() -> Callable[..., float]:
    """
    ∫_0^∞ g(u_α(x), u_β(x)) f(x)^{1+τ} dx.

    z = β log(x/α) 로 바꾸면 f dx = expit(z) expit(-z) dz 이고,
    f^τ 와 점수함수는 교과서 형태 그대로 z 에서 계산합니다.
    """

    def _integrate(
        p: Params,
        tau: float,
        g: Callable[[float, float], float] = lambda _ua, _ub: 1.0,
    ) -> float:
        a, b = p.alpha, p.beta

        def integrand(z: float) -> float:
            log_s = -np.logaddexp(0.0, -z) - np.logaddexp(0.0, z)
            log_f = math.log(b) - math.log(a) - z / b + log_s
            t_ratio = math.tanh(z / 2.0)  # (t-1)/(t+1), t = e^z
            u_alpha = b / a * t_ratio
            u_beta = 1.0 / b - (z / b) * t_ratio
            return g(u_alpha, u_beta) * math.exp(tau * log_f + log_s)

        value, _ = integrate.quad(
            integrand, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-11, limit=500
        )
        return value

    return _integrate


@pytest.fixture(scope="session")
def normal_q3() -> float:
    from scipy.stats import norm

    return float(norm.ppf(0.75))

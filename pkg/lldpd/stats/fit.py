"""
H_{n,τ} 최대화로 MDPDE(τ=0 이면 MLE)를 구합니다.

(log α, log β) 좌표에서 Nelder-Mead 심플렉스로 분지(basin)를 찾고,
해석적 기울기 + 수치 헤시안의 감쇠 뉴턴법으로 정상점 조건을 조입니다.
시작점마다 같은 절차를 반복하고 목적함수가 가장 큰 결과를 반환합니다.
"""

import logging
import math

import numpy as np
from scipy.optimize import minimize

from lldpd.exception_handler import DegenerateSampleError, DomainError
from lldpd.models.fit import FitOptions, FitResult, StartStrategy
from lldpd.models.params import Params, Sample
from lldpd.stats import competitors
from lldpd.stats.dpd import beta_arguments, check_tau, gradient_value, objective_value

logger = logging.getLogger(__name__)

# 로지스틱 분포의 IQR = 2·ln3·scale
_LOGISTIC_IQR = 2.0 * math.log(3.0)
_SIMPLEX_SIZE = 0.1
_TIE = 1e-12


def validate_sample(s: Sample) -> None:
    if len(s) < 2:
        raise DegenerateSampleError(f"적합에는 n >= 2 가 필요합니다: n={len(s)}")
    if np.ptp(s.array) == 0:
        raise DegenerateSampleError("모든 관측값이 같은 표본은 적합할 수 없습니다.")


def moment_start(s: Sample) -> Params:
    """(표본 중앙값, 2·ln3 / IQR(log x)) 시작점"""
    z = s.log_array
    q1, q3 = np.percentile(z, [25, 75])
    iqr = float(q3 - q1)
    beta = _LOGISTIC_IQR / iqr if iqr > 0 else 1.0
    return Params(alpha=float(np.median(s.array)), beta=beta)


def start_points(s: Sample, starts) -> list[tuple[str, Params]]:
    points: list[tuple[str, Params]] = []
    for i, start in enumerate(starts):
        if isinstance(start, Params):
            points.append((f"user[{i}]", start))
            continue
        try:
            match start:
                case StartStrategy.hl:
                    est = competitors.estimate_hl(s)
                    points.append((str(start), Params(alpha=est.alpha_hat, beta=est.beta_hat)))
                case StartStrategy.sm:
                    est = competitors.estimate_sm(s)
                    points.append((str(start), Params(alpha=est.alpha_hat, beta=est.beta_hat)))
                case StartStrategy.moment:
                    points.append((str(start), moment_start(s)))
        except DegenerateSampleError as e:
            logger.warning("시작점 %s 생략: %s", start, e.detail)
    if not points:
        points.append((str(StartStrategy.moment), moment_start(s)))
    return points


class _Problem:
    """자유 모수의 로그 좌표 φ 위에서 H_{n,τ} 를 평가합니다."""

    def __init__(self, s: Sample, tau: float, free: tuple[int, ...], base: Params):
        self.x = s.array
        self.tau = tau
        self.free = np.asarray(free)
        self.base = np.array([base.alpha, base.beta])

    def theta(self, phi: np.ndarray) -> np.ndarray:
        theta = self.base.copy()
        theta[self.free] = np.exp(phi)
        return theta

    def value(self, phi: np.ndarray) -> float:
        alpha, beta = self.theta(phi)
        if not (np.isfinite(alpha) and np.isfinite(beta) and alpha > 0 and beta > 0):
            return -math.inf
        try:
            v = objective_value(self.x, alpha, beta, self.tau)
        except DomainError:
            return -math.inf
        return v if math.isfinite(v) else -math.inf

    def gradient(self, phi: np.ndarray) -> np.ndarray:
        """원래 좌표의 기울기 (자유 모수 성분만)"""
        alpha, beta = self.theta(phi)
        return gradient_value(self.x, alpha, beta, self.tau)[self.free]

    def log_gradient(self, phi: np.ndarray) -> np.ndarray:
        return self.gradient(phi) * np.exp(phi)

    def log_hessian(self, phi: np.ndarray, h: float) -> np.ndarray:
        k = phi.size
        hess = np.empty((k, k))
        for i in range(k):
            e = np.zeros(k)
            e[i] = h
            hess[:, i] = (self.log_gradient(phi + e) - self.log_gradient(phi - e)) / (2 * h)
        return 0.5 * (hess + hess.T)


def _ascent_step(g: np.ndarray, hess: np.ndarray) -> np.ndarray:
    """
    음의 정부호이면 뉴턴 스텝 -H^{-1}g, 아니면 고유값 절댓값으로 감쇠한 상승 방향.
    """
    w, v = np.linalg.eigh(hess)
    floor = 1e-8 * max(1.0, float(np.max(np.abs(w))))
    step = v @ ((v.T @ g) / np.maximum(np.abs(w), floor))
    norm = float(np.max(np.abs(step)))
    # 로그 좌표에서 한 번에 e배 이상 움직이지 않음
    return step if norm <= 1.0 else step / norm


def _polish(problem: _Problem, phi: np.ndarray, opts: FitOptions) -> tuple[np.ndarray, float, int]:
    value = problem.value(phi)
    iterations = 0
    for iterations in range(1, opts.max_iterations + 1):
        try:
            g = problem.log_gradient(phi)
            hess = problem.log_hessian(phi, opts.hessian_step)
        except DomainError:
            break
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(hess))):
            break
        step = _ascent_step(g, hess)
        t = 1.0
        accepted = None
        while t > 1e-10:
            candidate = phi + t * step
            v = problem.value(candidate)
            if v >= value - 1e-14 * (1.0 + abs(value)):
                accepted = (candidate, v)
                break
            t *= 0.5
        if accepted is None:
            break
        change = float(np.max(np.abs(accepted[0] - phi)))
        phi, value = accepted[0], max(value, accepted[1])
        if change < opts.tolerance:
            break
    return phi, value, iterations


def _run_start(problem: _Problem, phi0: np.ndarray, opts: FitOptions):
    k = phi0.size
    simplex = np.vstack([phi0] + [phi0 + _SIMPLEX_SIZE * np.eye(k)[i] for i in range(k)])
    res = minimize(
        lambda phi: -problem.value(phi),
        phi0,
        method="Nelder-Mead",
        options={
            "xatol": opts.simplex_xatol,
            "fatol": 1e-12,
            "maxiter": opts.max_iterations,
            "initial_simplex": simplex,
        },
    )
    phi = np.asarray(res.x, dtype=float)
    if problem.value(phi) < problem.value(phi0):
        phi = phi0
    phi, value, polish_iterations = _polish(problem, phi, opts)
    return phi, value, int(res.nit) + polish_iterations


def _fit(
    s: Sample, tau: float, opts: FitOptions | None, free: tuple[int, ...], base: Params | None
) -> FitResult:
    validate_sample(s)
    tau = check_tau(tau)
    opts = opts or FitOptions()
    problem_base = base or Params(alpha=1.0, beta=1.0)
    problem = _Problem(s, tau, free, problem_base)

    best = None
    for label, start in start_points(s, opts.starts):
        phi0 = np.log(np.array([start.alpha, start.beta])[problem.free])
        if not math.isfinite(problem.value(phi0)):
            logger.warning("시작점 %s 에서 목적함수가 정의되지 않아 생략합니다.", label)
            continue
        phi, value, iterations = _run_start(problem, phi0, opts)
        logger.debug(
            "start=%s tau=%g -> theta=%s H=%.12g (iter=%d)",
            label, tau, problem.theta(phi), value, iterations,
        )
        # 동률(1e-12 이내)이면 먼저 나온 시작점 유지
        if best is None or value > best[1] + _TIE:
            best = (phi, value, iterations, label)

    if best is None:
        raise DomainError(f"유효한 시작점이 없습니다 (tau={tau}).")

    phi, value, iterations, label = best
    alpha, beta = problem.theta(phi)
    gradient_norm = float(np.linalg.norm(problem.gradient(phi)))
    converged = math.isfinite(gradient_norm) and gradient_norm <= opts.gradient_tolerance
    if not converged:
        logger.warning(
            "적합이 수렴하지 않았습니다: tau=%g, |grad|=%.3g, start=%s", tau, gradient_norm, label
        )
    return FitResult(
        params_hat=Params(alpha=float(alpha), beta=float(beta)),
        tau=tau,
        objective_value=value,
        converged=converged,
        iterations=iterations,
        gradient_norm=gradient_norm if math.isfinite(gradient_norm) else math.inf,
        start_used=label,
        fixed=None if len(free) == 2 else ("beta" if free == (0,) else "alpha"),
    )


def fit_joint(s: Sample, tau: float, opts: FitOptions | None = None) -> FitResult:
    return _fit(s, tau, opts, free=(0, 1), base=None)


def fit_alpha_known(
    s: Sample, beta_known: float, tau: float, opts: FitOptions | None = None
) -> FitResult:
    """β 를 알고 있을 때 α 만 추정"""
    if not (math.isfinite(beta_known) and beta_known > 0):
        raise DomainError(f"beta_known 은 양수여야 합니다: {beta_known}")
    if tau > 0:
        beta_arguments(beta_known, tau)
    return _fit(s, tau, opts, free=(0,), base=Params(alpha=1.0, beta=beta_known))


def fit_beta_known(
    s: Sample, alpha_known: float, tau: float, opts: FitOptions | None = None
) -> FitResult:
    """α 를 알고 있을 때 β 만 추정"""
    if not (math.isfinite(alpha_known) and alpha_known > 0):
        raise DomainError(f"alpha_known 은 양수여야 합니다: {alpha_known}")
    return _fit(s, tau, opts, free=(1,), base=Params(alpha=alpha_known, beta=1.0))

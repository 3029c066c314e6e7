"""
몬테카를로 비교 실험.

각 반복은 마스터 시드와 반복 번호로 만든 독립 하위 스트림
(SeedSequence(seed, spawn_key=(i,)))에서 데이터를 생성하므로,
작업자 수나 추정량 목록이 바뀌어도 생성 데이터와 결과가 바뀌지 않습니다.
"""

import io
import logging
import math
import os
from collections.abc import Iterable, Sequence
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import partial

import numpy as np
import pandas as pd
from pydantic import TypeAdapter, ValidationError

from lldpd.config.config import settings
from lldpd.exception_handler import DomainError
from lldpd.models.fit import FitOptions, StartStrategy
from lldpd.models.params import Params, Sample
from lldpd.models.simulation import (
    ContaminationCase,
    EstimatorKind,
    EstimatorSpec,
    MetricsRow,
    ScenarioSpec,
    default_estimators,
)
from lldpd.models.run_config import OutputFormat
from lldpd.stats import competitors, loglogistic
from lldpd.stats.fit import fit_joint

logger = logging.getLogger(__name__)

HEAVY_TAIL = Params(alpha=1.0, beta=0.2)
SHIFTED_SCALE = Params(alpha=4.0, beta=10.0)
UNIFORM_UPPER = 20.0
CONSTANT_OUTLIER = 50.0

STUDY_BETAS: tuple[float, ...] = (1.5, 2.5, 5.0, 10.0)
STUDY_NS: tuple[int, ...] = (10, 25, 50, 75, 100)

TABLE_COLUMNS = ["estimator", "Bias", "RMSE", "alpha_hat", "beta_hat", "n_failed"]

_rows_adapter = TypeAdapter(list[MetricsRow])


def contaminate(
    s: Sample, case: ContaminationCase | int, rng: np.random.Generator, count: int | None = None
) -> Sample:
    """앞쪽 count(기본 3)개 관측값을 오염 메커니즘의 값으로 바꿉니다."""
    try:
        case = ContaminationCase(case)
    except ValueError as e:
        raise DomainError(f"알 수 없는 오염 케이스입니다: {case}") from e
    if case == ContaminationCase.clean:
        return s

    if count is None:
        count = settings.simulation.contaminated_count
    if count < 1:
        raise DomainError(f"오염 관측값 개수는 1 이상이어야 합니다: count={count}")
    if len(s) <= count:
        raise DomainError(f"Case {int(case)}는 n > {count} 이어야 합니다 (n={len(s)}).")

    match case:
        case ContaminationCase.heavy_tail:
            replacement = loglogistic.draw(HEAVY_TAIL, count, rng)
        case ContaminationCase.shifted_scale:
            replacement = loglogistic.draw(SHIFTED_SCALE, count, rng)
        case ContaminationCase.uniform:
            # U(0, 20) 에서 0 은 지지집합 밖
            replacement = rng.uniform(np.nextafter(0.0, 1.0), UNIFORM_UPPER, count)
        case ContaminationCase.constant:
            replacement = np.full(count, CONSTANT_OUTLIER)

    values = s.array.copy()
    values[:count] = replacement
    return Sample.of(values)


def replication_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _fit_starts(s: Sample) -> tuple[Params | StartStrategy, ...]:
    # HL/SM 은 반복마다 한 번만 계산해 모든 τ 적합의 시작점으로 재사용
    starts: list[Params | StartStrategy] = []
    for method in (competitors.estimate_hl, competitors.estimate_sm):
        try:
            est = method(s)
        except DomainError:
            continue
        starts.append(Params(alpha=est.alpha_hat, beta=est.beta_hat))
    return tuple(starts) or (StartStrategy.moment,)


def _estimate(spec: EstimatorSpec, s: Sample, opts: FitOptions) -> tuple[float, float] | None:
    try:
        match spec.kind:
            case EstimatorKind.dpd:
                result = fit_joint(s, spec.tau, opts)
                if not result.converged:
                    return None
                return result.params_hat.alpha, result.params_hat.beta
            case EstimatorKind.rm:
                est = competitors.estimate_rm(s)
            case EstimatorKind.sm:
                est = competitors.estimate_sm(s)
            case EstimatorKind.hl:
                est = competitors.estimate_hl(s)
    except (DomainError, ValidationError) as e:
        logger.debug("%s 추정 실패: %s", spec.label, e)
        return None
    return est.alpha_hat, est.beta_hat


def replicate_once(spec: ScenarioSpec, index: int) -> list[tuple[float, float] | None]:
    """index 번째 반복: 데이터 생성, 오염, 모든 추정량 적용"""
    rng = replication_rng(spec.seed, index)
    s = Sample.of(loglogistic.draw(spec.truth, spec.n, rng))
    s = contaminate(s, spec.contamination, rng, spec.contaminated_count)
    opts = FitOptions(starts=_fit_starts(s))
    return [_estimate(est, s, opts) for est in spec.estimators]


def _resolve_workers(workers: int | None) -> int:
    return workers or settings.simulation.workers or os.cpu_count() or 1


def _run_replications(
    spec: ScenarioSpec, workers: int | None, executor: Executor | None
) -> list[list[tuple[float, float] | None]]:
    job = partial(replicate_once, spec)
    indices = range(spec.replications)
    if executor is not None:
        return list(executor.map(job, indices, chunksize=_chunksize(spec, workers)))
    workers = _resolve_workers(workers)
    if workers == 1:
        return [job(i) for i in indices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, indices, chunksize=_chunksize(spec, workers)))


def _chunksize(spec: ScenarioSpec, workers: int | None) -> int:
    return max(1, spec.replications // (4 * _resolve_workers(workers)))


def _aggregate(
    label: str, truth: Params, estimates: Iterable[tuple[float, float] | None]
) -> MetricsRow:
    biases, squared, alphas, betas = [], [], [], []
    n_failed = 0
    for est in estimates:
        if est is None:
            n_failed += 1
            continue
        da, db = est[0] - truth.alpha, est[1] - truth.beta
        biases.append(abs(da) + abs(db))
        squared.append(da * da + db * db)
        alphas.append(est[0])
        betas.append(est[1])

    k = len(biases)
    if k == 0:
        return MetricsRow(estimator=label, n_failed=n_failed)
    # fsum 은 입력 순서와 무관하게 정확히 반올림된 합을 줍니다
    return MetricsRow(
        estimator=label,
        mean_bias=math.fsum(biases) / k,
        rmse=math.sqrt(math.fsum(squared) / k),
        mean_alpha_hat=math.fsum(alphas) / k,
        mean_beta_hat=math.fsum(betas) / k,
        n_failed=n_failed,
    )


def replicate_metrics(
    spec: ScenarioSpec, workers: int | None = None, executor: Executor | None = None
) -> list[MetricsRow]:
    logger.info("시나리오 시작: %s, M=%d", spec.label, spec.replications)
    results = _run_replications(spec, workers, executor)
    rows = [
        _aggregate(est.label, spec.truth, (r[j] for r in results))
        for j, est in enumerate(spec.estimators)
    ]
    failed = sum(row.n_failed for row in rows)
    if failed:
        logger.warning("시나리오 %s: 실패한 추정 %d 건은 집계에서 제외했습니다.", spec.label, failed)
    return rows


def run_study(
    alpha: float = 1.0,
    betas: Sequence[float] = STUDY_BETAS,
    ns: Sequence[int] = STUDY_NS,
    case: ContaminationCase = ContaminationCase.clean,
    estimators: Sequence[EstimatorSpec] | None = None,
    replications: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
) -> list[MetricsRow]:
    """β × n 격자 전체. 모든 시나리오가 같은 마스터 시드를 공유합니다."""
    specs = [
        ScenarioSpec(
            truth=Params(alpha=alpha, beta=beta),
            n=n,
            replications=replications or settings.simulation.replications,
            contamination=case,
            estimators=tuple(estimators) if estimators else default_estimators(),
            seed=settings.simulation.seed if seed is None else seed,
        )
        for beta in betas
        for n in ns
    ]
    rows: list[MetricsRow] = []
    workers = _resolve_workers(workers)
    if workers == 1:
        for spec in specs:
            rows += [r.model_copy(update={"scenario": spec.label}) for r in replicate_metrics(spec, 1)]
        return rows
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for spec in specs:
            rows += [
                r.model_copy(update={"scenario": spec.label})
                for r in replicate_metrics(spec, workers, executor=pool)
            ]
    return rows


def _frame(rows: Sequence[MetricsRow]) -> pd.DataFrame:
    with_scenario = any(row.scenario is not None for row in rows)
    columns = (["scenario"] if with_scenario else []) + TABLE_COLUMNS
    records = [
        {
            "scenario": row.scenario,
            "estimator": row.estimator,
            "Bias": row.mean_bias,
            "RMSE": row.rmse,
            "alpha_hat": row.mean_alpha_hat,
            "beta_hat": row.mean_beta_hat,
            "n_failed": row.n_failed,
        }
        for row in rows
    ]
    frame = pd.DataFrame.from_records(records, columns=columns)
    metrics = ["Bias", "RMSE", "alpha_hat", "beta_hat"]
    frame[metrics] = frame[metrics].apply(pd.to_numeric)
    return frame


def emit_table(
    rows: Sequence[MetricsRow],
    format: OutputFormat = OutputFormat.text,
    decimals: int | None = None,
) -> str:
    match OutputFormat(format):
        case OutputFormat.json:
            return _rows_adapter.dump_json(list(rows), indent=2).decode() + "\n"
        case OutputFormat.csv:
            return _frame(rows).to_csv(index=False)
        case OutputFormat.text:
            frame = _frame(rows)
            if frame.empty:
                return " ".join(frame.columns) + "\n"
            decimals = settings.output.decimals if decimals is None else decimals
            return frame.to_string(
                index=False, na_rep="-", float_format=lambda v: f"{v:.{decimals}f}"
            ) + "\n"


def parse_table(text: str) -> list[MetricsRow]:
    """emit_table(..., csv) 출력을 다시 MetricsRow 로 읽습니다."""
    frame = pd.read_csv(io.StringIO(text), dtype={"estimator": str})
    frame = frame.astype(object).where(frame.notna(), None)
    return [
        MetricsRow(
            estimator=rec["estimator"],
            mean_bias=rec["Bias"],
            rmse=rec["RMSE"],
            mean_alpha_hat=rec["alpha_hat"],
            mean_beta_hat=rec["beta_hat"],
            n_failed=int(rec["n_failed"]),
            scenario=rec.get("scenario"),
        )
        for rec in frame.to_dict(orient="records")
    ]

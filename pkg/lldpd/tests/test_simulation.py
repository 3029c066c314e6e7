import json

import numpy as np
import pytest

from lldpd.exception_handler import DomainError
from lldpd.models.params import Params, Sample
from lldpd.models.run_config import OutputFormat
from lldpd.models.simulation import (
    ContaminationCase,
    EstimatorKind,
    EstimatorSpec,
    MetricsRow,
    ScenarioSpec,
    default_estimators,
)
from lldpd.stats.simulation import (
    CONSTANT_OUTLIER,
    STUDY_BETAS,
    STUDY_NS,
    UNIFORM_UPPER,
    contaminate,
    emit_table,
    parse_table,
    replicate_metrics,
    replication_rng,
    run_study,
)

MLE = EstimatorSpec(kind=EstimatorKind.dpd, tau=0.0)
DPD_02 = EstimatorSpec(kind=EstimatorKind.dpd, tau=0.2)
DPD_03 = EstimatorSpec(kind=EstimatorKind.dpd, tau=0.3)
SM = EstimatorSpec(kind=EstimatorKind.sm)


def _by_label(rows: list[MetricsRow]) -> dict[str, MetricsRow]:
    return {row.estimator: row for row in rows}


class TestContaminate:
    @pytest.fixture
    def clean(self) -> Sample:
        return Sample.of(np.linspace(0.5, 2.0, 10))

    def test_clean_is_unchanged(self, clean: Sample, rng: np.random.Generator):
        assert contaminate(clean, ContaminationCase.clean, rng) == clean

    @pytest.mark.parametrize(
        "case",
        [ContaminationCase.heavy_tail, ContaminationCase.shifted_scale, ContaminationCase.uniform],
    )
    def test_replaces_first_three(
        self, clean: Sample, case: ContaminationCase, rng: np.random.Generator
    ):
        out = contaminate(clean, case, rng)
        assert len(out) == len(clean)
        assert out.values[3:] == clean.values[3:]
        assert out.values[:3] != clean.values[:3]
        assert all(v > 0 for v in out.values[:3])

    def test_uniform_range(self, clean: Sample, rng: np.random.Generator):
        out = contaminate(clean, ContaminationCase.uniform, rng)
        assert all(0 < v < UNIFORM_UPPER for v in out.values[:3])

    def test_constant(self, clean: Sample, rng: np.random.Generator):
        out = contaminate(clean, 5, rng)
        assert out.values[:3] == (CONSTANT_OUTLIER,) * 3

    def test_custom_count(self, clean: Sample, rng: np.random.Generator):
        out = contaminate(clean, ContaminationCase.constant, rng, count=5)
        assert out.values[:5] == (CONSTANT_OUTLIER,) * 5
        assert out.values[5:] == clean.values[5:]

    @pytest.mark.parametrize("count", [0, -1])
    def test_rejects_non_positive_count(
        self, clean: Sample, count: int, rng: np.random.Generator
    ):
        with pytest.raises(DomainError):
            contaminate(clean, ContaminationCase.constant, rng, count=count)

    def test_unknown_case(self, clean: Sample, rng: np.random.Generator):
        with pytest.raises(DomainError):
            contaminate(clean, 9, rng)

    def test_too_short(self, rng: np.random.Generator):
        with pytest.raises(DomainError):
            contaminate(Sample.of([1.0, 2.0, 3.0]), ContaminationCase.constant, rng)


class TestScenarioSpec:
    def test_rejects_short_contaminated_sample(self):
        with pytest.raises(ValueError):
            ScenarioSpec(
                truth=Params(alpha=1.0, beta=2.0),
                n=3,
                replications=10,
                contamination=ContaminationCase.constant,
            )

    def test_estimator_labels(self):
        labels = [spec.label for spec in default_estimators()]
        assert labels[0] == "MLE"
        assert labels[1:11] == [f"DPD_{t / 10:g}" for t in range(1, 11)]
        assert labels[11:] == ["RM", "SM", "HL"]

    def test_tau_only_for_dpd(self):
        with pytest.raises(ValueError):
            EstimatorSpec(kind=EstimatorKind.dpd)
        with pytest.raises(ValueError):
            EstimatorSpec(kind=EstimatorKind.rm, tau=0.1)


class TestReproducibility:
    @pytest.fixture(scope="class")
    def spec(self) -> ScenarioSpec:
        return ScenarioSpec(
            truth=Params(alpha=1.0, beta=2.5),
            n=25,
            replications=20,
            estimators=(MLE, DPD_03, SM),
            seed=7,
        )

    def test_substreams(self):
        first = replication_rng(7, 3).random(5)
        assert np.array_equal(first, replication_rng(7, 3).random(5))
        assert not np.array_equal(first, replication_rng(7, 4).random(5))

    def test_same_seed_same_rows(self, spec: ScenarioSpec):
        assert replicate_metrics(spec, workers=1) == replicate_metrics(spec, workers=1)

    def test_independent_of_workers(self, spec: ScenarioSpec):
        assert replicate_metrics(spec, workers=2) == replicate_metrics(spec, workers=1)

    def test_independent_of_estimator_list(self, spec: ScenarioSpec):
        full = _by_label(replicate_metrics(spec, workers=1))
        only_sm = replicate_metrics(spec.model_copy(update={"estimators": (SM,)}), workers=1)
        assert only_sm[0] == full["SM"]

    def test_aggregates(self, spec: ScenarioSpec):
        for row in replicate_metrics(spec, workers=1):
            assert row.n_failed <= spec.replications
            if row.rmse is not None:
                assert row.rmse >= 0
                # RMSE² >= Bias² / 2  (Cauchy-Schwarz 의 두 성분 합)
                assert row.rmse**2 >= row.mean_bias**2 / 2 - 1e-12


class TestStudy:
    def test_scenario_labels(self):
        rows = run_study(
            betas=(2.5,),
            ns=(10, 25),
            estimators=(SM,),
            replications=3,
            seed=1,
            workers=1,
        )
        assert [row.scenario for row in rows] == [
            "beta=2.5;n=10;case=1",
            "beta=2.5;n=25;case=1",
        ]

    def test_default_grid(self):
        assert STUDY_BETAS == (1.5, 2.5, 5.0, 10.0)
        assert STUDY_NS == (10, 25, 50, 75, 100)

    @pytest.mark.full_tables
    def test_full_grid(self):
        rows = run_study(case=ContaminationCase.clean)
        assert len(rows) == len(STUDY_BETAS) * len(STUDY_NS) * len(default_estimators())

        # β=2.5, n=25 셀 (M=10 000)
        cell = _by_label(
            [row for row in rows if row.scenario == "beta=2.5;n=25;case=1"]
        )
        assert cell["MLE"].mean_beta_hat == pytest.approx(2.63727, rel=0.01)
        assert cell["MLE"].mean_bias == pytest.approx(0.48028, rel=0.05)
        assert cell["RM"].rmse == pytest.approx(0.55662, rel=0.05)


@pytest.mark.slow
class TestDeskScaleClean:
    @pytest.fixture(scope="class")
    def rows(self) -> dict[str, MetricsRow]:
        spec = ScenarioSpec(
            truth=Params(alpha=1.0, beta=2.5),
            n=25,
            replications=1000,
            seed=20240607,
        )
        return _by_label(replicate_metrics(spec))

    def test_mle(self, rows: dict[str, MetricsRow]):
        mle = rows["MLE"]
        assert 2.57 <= mle.mean_beta_hat <= 2.70
        assert 0.44 <= mle.mean_bias <= 0.52

    def test_rmse_grows_with_tau(self, rows: dict[str, MetricsRow]):
        rmse = [rows["MLE"].rmse] + [rows[f"DPD_{t / 10:g}"].rmse for t in range(1, 11)]
        assert all(b >= a * (1 - 1e-3) for a, b in zip(rmse, rmse[1:]))

    def test_repeated_median(self, rows: dict[str, MetricsRow]):
        assert rows["RM"].rmse == pytest.approx(0.55662, rel=0.15)


@pytest.mark.slow
class TestDeskScaleContaminated:
    @staticmethod
    def _rows(case: ContaminationCase) -> dict[str, MetricsRow]:
        spec = ScenarioSpec(
            truth=Params(alpha=1.0, beta=10.0),
            n=25,
            replications=500,
            contamination=case,
            estimators=(MLE, DPD_02, DPD_03),
            seed=20240607,
        )
        return _by_label(replicate_metrics(spec))

    def test_constant_outliers(self):
        rows = self._rows(ContaminationCase.constant)
        assert rows["MLE"].mean_beta_hat < 4.0
        assert 9.8 <= rows["DPD_0.2"].mean_beta_hat <= 11.0

    @pytest.mark.parametrize(
        "case",
        [
            ContaminationCase.heavy_tail,
            ContaminationCase.shifted_scale,
            ContaminationCase.uniform,
            ContaminationCase.constant,
        ],
    )
    def test_dpd_beats_mle(self, case: ContaminationCase):
        rows = self._rows(case)
        assert rows["DPD_0.3"].rmse < rows["MLE"].rmse


class TestEmitTable:
    ROWS = [
        MetricsRow(
            estimator="MLE",
            mean_bias=0.48,
            rmse=0.7,
            mean_alpha_hat=1.01,
            mean_beta_hat=2.63,
            n_failed=0,
        ),
        MetricsRow(estimator="RM", n_failed=5),
    ]

    def test_empty(self):
        assert emit_table([]) == "estimator Bias RMSE alpha_hat beta_hat n_failed\n"

    def test_text(self):
        text = emit_table(self.ROWS[:1], decimals=3)
        header, line = text.splitlines()
        assert header.split() == ["estimator", "Bias", "RMSE", "alpha_hat", "beta_hat", "n_failed"]
        assert line.split() == ["MLE", "0.480", "0.700", "1.010", "2.630", "0"]

    def test_text_missing_metrics(self):
        line = emit_table(self.ROWS).splitlines()[2]
        assert line.split() == ["RM", "-", "-", "-", "-", "5"]

    def test_json(self):
        records = json.loads(emit_table(self.ROWS, OutputFormat.json))
        assert records[0]["mean_beta_hat"] == 2.63
        assert records[1]["rmse"] is None
        assert records[1]["n_failed"] == 5

    def test_csv_round_trip(self):
        assert parse_table(emit_table(self.ROWS, OutputFormat.csv)) == self.ROWS

    def test_csv_with_scenario(self):
        rows = [row.model_copy(update={"scenario": "beta=2.5,n=25,case=1"}) for row in self.ROWS]
        text = emit_table(rows, OutputFormat.csv)
        assert text.splitlines()[0].startswith("scenario,estimator,")
        assert parse_table(text) == rows

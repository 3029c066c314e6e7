import io
import math

import numpy as np
import pandas as pd
import pytest

from lldpd.exception_handler import ConditioningError, DomainError
from lldpd.models.influence import GridScale, IFParameter, IFPoint
from lldpd.models.params import Params
from lldpd.stats.asymptotics import marginal_variance_alpha, marginal_variance_beta
from lldpd.stats.influence import (
    gross_error_sensitivity,
    if_alpha,
    if_beta,
    if_grid,
    if_joint,
    influence_values,
    write_grid,
)
from lldpd.stats.loglogistic import draw

PI2 = math.pi**2
P = Params(alpha=1.0, beta=2.0)


class TestMleInfluence:
    def test_alpha_zero_at_median(self):
        assert if_alpha(P, 0.0, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_alpha_bounded_limit(self):
        # (β/α)/J(α) = 3α/β
        assert if_alpha(P, 0.0, 1e9) == pytest.approx(1.5, rel=1e-6)
        assert if_alpha(P, 0.0, 1e-9) == pytest.approx(-1.5, rel=1e-6)

    def test_beta_at_median(self):
        # u_β(α) = 1/β,  J(β) = (3+π²)/(9β²)
        assert if_beta(P, 0.0, 1.0) == pytest.approx(18 / (3 + PI2), rel=1e-10)

    def test_beta_diverges(self):
        values = [abs(if_beta(P, 0.0, 10.0**k)) for k in range(3, 9)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert if_beta(P, 0.0, 1e6) < -3

    def test_alpha_sign_pattern(self):
        assert if_alpha(P, 0.0, 0.5) < 0 < if_alpha(P, 0.0, 2.0)
        assert if_alpha(P, 0.3, 0.5) < 0 < if_alpha(P, 0.3, 2.0)


class TestDpdInfluence:
    @pytest.mark.parametrize("tau", [0.1, 0.3, 0.9])
    @pytest.mark.parametrize("parameter", list(IFParameter))
    def test_bounded(self, tau: float, parameter: IFParameter):
        ges = gross_error_sensitivity(P, tau, parameter)
        assert math.isfinite(ges)
        for far in (np.geomspace(1e8, 1e16, 50), np.geomspace(1e-16, 1e-8, 50)):
            assert np.all(np.abs(influence_values(P, tau, far, parameter)) <= ges)

    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
    def test_continuous_at_zero(self, x: float):
        assert if_alpha(P, 1e-7, x) == pytest.approx(if_alpha(P, 0.0, x), abs=1e-4)
        assert if_beta(P, 1e-7, x) == pytest.approx(if_beta(P, 0.0, x), abs=1e-4)

    def test_gross_error_sensitivity_shrinks(self):
        mle = gross_error_sensitivity(P, 0.0, IFParameter.beta)
        dpd = gross_error_sensitivity(P, 0.5, IFParameter.beta)
        assert dpd < mle

    @pytest.mark.parametrize("tau", [0.0, 0.5])
    def test_variance_matches_asymptotics(self, tau: float, rng: np.random.Generator):
        xs = draw(P, 200_000, rng)
        ifa = influence_values(P, tau, xs, IFParameter.alpha)
        ifb = influence_values(P, tau, xs, IFParameter.beta)
        assert np.mean(ifa) == pytest.approx(0.0, abs=0.02)
        assert np.mean(ifa**2) == pytest.approx(marginal_variance_alpha(P, tau), rel=0.03)
        assert np.mean(ifb**2) == pytest.approx(marginal_variance_beta(P, tau), rel=0.05)

    def test_invalid_position(self):
        with pytest.raises(DomainError):
            if_alpha(P, 0.3, 0.0)
        with pytest.raises(DomainError):
            if_beta(P, 0.3, math.inf)


class TestJointInfluence:
    @pytest.mark.parametrize("x", [0.2, 1.0, 7.0])
    def test_decouples_at_mle(self, x: float):
        joint = if_joint(P, 0.0, x)
        assert joint[0] == pytest.approx(if_alpha(P, 0.0, x), rel=1e-10, abs=1e-12)
        assert joint[1] == pytest.approx(if_beta(P, 0.0, x), rel=1e-10, abs=1e-12)

    def test_bounded_for_positive_tau(self):
        near = if_joint(P, 0.3, 1e6)
        far = if_joint(P, 0.3, 1e12)
        assert abs(far[1]) <= abs(near[1]) + 1.0

    def test_invalid_shape_for_tau(self):
        with pytest.raises((DomainError, ConditioningError)):
            if_joint(Params(alpha=1.0, beta=0.2), 1.0, 1.0)


class TestGrid:
    def test_endpoints(self):
        grid = if_grid(P, 0.1, 0.5, 8.0, 2)
        assert [pt.x for pt in grid] == [0.5, 8.0]

    def test_scales(self):
        log_grid = if_grid(P, 0.1, 0.01, 100.0, 5, GridScale.log)
        lin_grid = if_grid(P, 0.1, 0.01, 100.0, 5, GridScale.linear)
        assert [pt.x for pt in log_grid] == pytest.approx([0.01, 0.1, 1.0, 10.0, 100.0])
        assert lin_grid[1].x == pytest.approx(25.0075)

    def test_values_match_pointwise(self):
        grid = if_grid(P, 0.3, 0.1, 10.0, 7, parameter=IFParameter.beta)
        for pt in grid:
            assert pt.value == pytest.approx(if_beta(P, 0.3, pt.x), rel=1e-14)

    @pytest.mark.parametrize(
        "x_min, x_max, n", [(1.0, 1.0, 10), (2.0, 1.0, 10), (0.0, 1.0, 10), (0.1, 1.0, 1)]
    )
    def test_invalid(self, x_min: float, x_max: float, n: int):
        with pytest.raises(DomainError):
            if_grid(P, 0.1, x_min, x_max, n)


class TestWriteGrid:
    def test_columns(self, tmp_path):
        grids = {
            f"tau={tau}": if_grid(P, tau, 0.1, 10.0, 5) for tau in (0.0, 0.5)
        }
        path = tmp_path / "if.csv"
        text = write_grid(grids, path)
        assert path.read_text(encoding="utf-8") == text

        frame = pd.read_csv(path, float_precision="round_trip")
        assert list(frame.columns) == ["x", "tau=0.0", "tau=0.5"]
        assert len(frame) == 5
        assert frame["tau=0.0"].tolist() == [pt.value for pt in grids["tau=0.0"]]

    def test_stream(self):
        buffer = io.StringIO()
        text = write_grid({"a": [IFPoint(x=1.0, value=0.25)]}, buffer)
        assert buffer.getvalue() == text == "x,a\n1.0,0.25\n"

    def test_mismatched_grid(self):
        with pytest.raises(DomainError):
            write_grid(
                {
                    "a": [IFPoint(x=1.0, value=0.0)],
                    "b": [IFPoint(x=2.0, value=0.0)],
                }
            )

    def test_empty(self):
        with pytest.raises(DomainError):
            write_grid({})

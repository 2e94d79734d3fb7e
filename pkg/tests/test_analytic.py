"""Tests for gaussent.dynamics.analytic."""
import math

import numpy as np
import pytest

from gaussent.core.entanglement import log_negativity, simon_reduced
from gaussent.core.errors import DomainError, PreconditionError
from gaussent.core.gaussian import (
    SqueezedVacuumParams,
    purity,
    sum_diff_decompose,
    tmsv_covariance,
    to_standard_form,
)
from gaussent.dynamics.analytic import (
    NEVER,
    ReservoirKind,
    ReservoirModel,
    asymptotic_negativity,
    disentanglement_time,
    evolve,
    evolve_common,
    evolve_independent,
    find_disentanglement_time,
    find_survival_threshold,
    rescaled_time,
    stationary_elements,
    survival_threshold,
    tau_grid,
    time_from_tau,
    times_for_grid,
    trajectory,
)
from gaussent.guardrails import RUN_PARAMS


def common(nbar: float, gamma: float = 1.0) -> ReservoirModel:
    return ReservoirModel(ReservoirKind.COMMON, gamma=gamma, nbar=nbar)


def independent(nbar: float, gamma: float = 1.0) -> ReservoirModel:
    return ReservoirModel(ReservoirKind.INDEPENDENT, gamma=gamma, nbar=nbar)


class TestReservoirModel:
    def test_noise(self):
        assert common(0.5).noise == 2.0

    def test_kind_from_string(self):
        assert ReservoirModel("independent", gamma=1.0, nbar=0.0).kind is ReservoirKind.INDEPENDENT

    @pytest.mark.parametrize("gamma", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_gamma(self, gamma):
        with pytest.raises(DomainError):
            common(0.5, gamma=gamma)

    def test_rejects_negative_nbar(self):
        with pytest.raises(DomainError):
            independent(-0.5)

    def test_relaxation_rates(self):
        assert common(0.0, gamma=3.0).relaxation_rate == 6.0
        assert independent(0.0, gamma=3.0).relaxation_rate == 3.0


class TestTimeAxes:
    def test_rescaled_time(self):
        assert rescaled_time(common(0.5), 1.0) == pytest.approx(1.0 - math.exp(-2.0))
        assert rescaled_time(independent(0.5), 1.0) == pytest.approx(1.0 - math.exp(-1.0))

    def test_tau_round_trip(self):
        model = common(0.5, gamma=0.7)
        assert rescaled_time(model, time_from_tau(model, 0.6)) == pytest.approx(0.6)

    def test_negative_time(self):
        with pytest.raises(DomainError):
            rescaled_time(common(0.5), -1.0)

    def test_tau_outside_range(self):
        with pytest.raises(DomainError):
            time_from_tau(common(0.5), 1.0)

    def test_grid(self):
        grid = tau_grid(5, 0.8)
        assert grid == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8])

    def test_grid_needs_two_points(self):
        with pytest.raises(DomainError):
            tau_grid(1, 0.5)

    def test_times_for_grid_ascending(self):
        times = times_for_grid(independent(1.0), 50, 0.99)
        assert times[0] == 0.0
        assert all(b > a for a, b in zip(times, times[1:]))


class TestPropagators:
    @pytest.mark.parametrize("model", [common(0.5), independent(0.5)])
    def test_initial_state_is_tmsv(self, model):
        expected = to_standard_form(tmsv_covariance(SqueezedVacuumParams(0.7)))
        got = evolve(0.7, model, 0.0)
        assert got.n1 == pytest.approx(expected.n1)
        assert got.n2 == pytest.approx(expected.n2)
        assert got.c1 == pytest.approx(expected.c1)
        assert got.c2 == pytest.approx(expected.c2)

    def test_common_stationary_state(self):
        n = 2.0
        r = 1.0
        elems = stationary_elements(r, common(0.5))
        assert elems.n1 == pytest.approx((math.exp(2 * r) + n) / 2)
        assert elems.n2 == pytest.approx((math.exp(-2 * r) + n) / 2)
        assert elems.c1 == pytest.approx((n - math.exp(2 * r)) / 2)
        assert elems.c2 == pytest.approx((n - math.exp(-2 * r)) / 2)

    def test_independent_relaxes_to_thermal(self):
        elems = stationary_elements(1.0, independent(2.5))
        assert (elems.n1, elems.n2, elems.c1, elems.c2) == pytest.approx((6.0, 6.0, 0.0, 0.0))

    def test_independent_keeps_symmetric_form(self):
        elems = evolve_independent(0.5, independent(1.0), 0.3)
        assert elems.n1 == elems.n2
        assert elems.c1 == -elems.c2

    def test_wrong_model_kind(self):
        with pytest.raises(PreconditionError):
            evolve_common(0.5, independent(0.5), 1.0)
        with pytest.raises(PreconditionError):
            evolve_independent(0.5, common(0.5), 1.0)

    def test_gamma_scales_time(self):
        slow = evolve(0.5, common(1.0, gamma=1.0), 2.0)
        fast = evolve(0.5, common(1.0, gamma=4.0), 0.5)
        assert slow == fast

    @pytest.mark.parametrize("nbar", [0.0, 0.5, 4.0])
    @pytest.mark.parametrize("gamma_t", [0.1, 1.0, 5.0])
    def test_difference_mode_untouched_in_common_reservoir(self, nbar, gamma_t):
        initial = sum_diff_decompose(tmsv_covariance(SqueezedVacuumParams(1.0))).diff_block
        later = sum_diff_decompose(evolve(1.0, common(nbar), gamma_t).to_covariance()).diff_block
        assert np.allclose(later, initial, atol=1e-12)

    @pytest.mark.parametrize("kind", list(ReservoirKind))
    def test_states_stay_physical(self, kind):
        model = ReservoirModel(kind, gamma=1.0, nbar=2.5)
        for t in times_for_grid(model, 40, 0.999):
            assert evolve(2.0, model, t).to_covariance().is_physical()


class TestInitialNegativity:
    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
    def test_proportional_to_squeezing(self, r):
        assert log_negativity(evolve(r, common(0.5), 0.0)) == pytest.approx(
            2.0 * abs(r) / math.log(2.0), abs=1e-10
        )


class TestSurvivalThreshold:
    def test_closed_form(self):
        assert survival_threshold(0.5) == pytest.approx(0.5 * math.log(2.0))
        assert survival_threshold(0.0) == 0.0

    def test_boundary_at_e_squared(self):
        assert survival_threshold((math.exp(2.0) - 1.0) / 2.0) == pytest.approx(1.0)

    def test_bisection_matches_closed_form(self):
        assert find_survival_threshold(0.5) == pytest.approx(0.5 * math.log(2.0), abs=1e-6)

    def test_bisection_brackets_hottest_reservoir(self):
        nbar = RUN_PARAMS["nbar"]["max"]
        assert survival_threshold(nbar) > 5.0
        assert find_survival_threshold(nbar) == pytest.approx(survival_threshold(nbar), abs=1e-3)

    @pytest.mark.parametrize("nbar", [0.5, 2.5, 4.0])
    def test_threshold_is_sharp(self, nbar):
        r_star = survival_threshold(nbar)
        above = stationary_elements(r_star + 1e-3, common(nbar))
        below = stationary_elements(r_star - 1e-3, common(nbar))
        assert log_negativity(above) > 0
        assert log_negativity(below) == 0.0

    def test_reported_split_for_half_photon(self):
        model = common(0.5)
        assert disentanglement_time(0.1, model) is not NEVER
        for r in (0.5, 1.0, 2.0):
            assert disentanglement_time(r, model) is NEVER


class TestDisentanglementTime:
    def test_common_closed_form(self):
        t = disentanglement_time(0.1, common(0.5))
        assert t == pytest.approx(0.5 * math.log((2.0 - math.exp(-0.2)) / (2.0 - math.exp(0.2))), rel=1e-12)
        assert t == pytest.approx(0.208455, abs=1e-4)
        assert abs(simon_reduced(evolve(0.1, common(0.5), t)).simon_value) < 1e-9

    def test_independent_closed_form(self):
        t = disentanglement_time(1.0, independent(0.5))
        assert t == pytest.approx(math.log(2.0 - math.exp(-2.0)), rel=1e-12)
        assert t == pytest.approx(0.623072, abs=1e-4)
        assert abs(simon_reduced(evolve(1.0, independent(0.5), t)).simon_value) < 1e-9

    @pytest.mark.parametrize(
        "r, model",
        [(0.1, common(0.5)), (0.2, common(2.5)), (1.0, independent(0.5)), (0.5, independent(4.0))],
    )
    def test_root_finder_agrees(self, r, model):
        closed = disentanglement_time(r, model)
        found = find_disentanglement_time(r, model, t_max=50.0)
        assert found == pytest.approx(closed, abs=1e-9)

    def test_scales_with_gamma(self):
        assert disentanglement_time(0.1, common(0.5, gamma=2.0)) == pytest.approx(
            disentanglement_time(0.1, common(0.5)) / 2.0
        )

    def test_sign_of_squeezing_is_irrelevant(self):
        assert disentanglement_time(-0.1, common(0.5)) == disentanglement_time(0.1, common(0.5))

    def test_vacuum_reservoir_never_disentangles_independent_modes(self):
        assert disentanglement_time(0.3, independent(0.0)) is NEVER

    def test_unsqueezed_state_is_separable_at_start(self):
        assert disentanglement_time(0.0, independent(0.5)) == 0.0
        assert find_disentanglement_time(0.0, independent(0.5), t_max=1.0) == 0.0

    def test_root_finder_reports_survival(self):
        assert find_disentanglement_time(1.0, common(0.5), t_max=20.0) is NEVER


class TestAsymptoticNegativity:
    @pytest.mark.parametrize("r, nbar", [(1.0, 0.0), (1.0, 0.5), (2.0, 0.5)])
    def test_long_time_limit(self, r, nbar):
        expected = asymptotic_negativity(r, nbar)
        assert expected == pytest.approx(r / math.log(2.0) - 0.5 * math.log2(2 * nbar + 1))
        assert log_negativity(evolve(r, common(nbar), 20.0)) == pytest.approx(expected, abs=1e-6)

    def test_boundary_case_vanishes(self):
        nbar = 0.5
        r = survival_threshold(nbar)
        assert asymptotic_negativity(r, nbar) < 1e-6
        assert log_negativity(evolve(r, common(nbar), 20.0)) < 1e-6

    def test_below_threshold(self):
        with pytest.raises(PreconditionError):
            asymptotic_negativity(0.1, 0.5)


class TestVacuumReservoirPurity:
    @pytest.mark.parametrize("r", [0.5, 1.0])
    def test_purity_revives(self, r):
        model = common(0.0)
        points = trajectory(r, model, np.linspace(0.0, 20.0, 401))
        assert min(p.purity for p in points) < 1.0 - 1e-3
        final = points[-1]
        assert final.purity == pytest.approx(1.0, abs=1e-6)
        assert final.negativity == pytest.approx(r / math.log(2.0), abs=1e-6)


class TestTrajectory:
    def test_columns(self):
        model = independent(0.5, gamma=2.0)
        points = trajectory(1.0, model, [0.0, 0.25, 0.5])
        assert [p.gamma_t for p in points] == pytest.approx([0.0, 0.5, 1.0])
        assert points[0].negativity == pytest.approx(2.0 / math.log(2.0))
        assert points[1].purity == pytest.approx(purity(points[1].elems))
        assert points[1].tau == pytest.approx(1.0 - math.exp(-0.5))

    def test_rejects_unsorted_grid(self):
        with pytest.raises(DomainError):
            trajectory(1.0, common(0.5), [0.0, 2.0, 1.0])

    @pytest.mark.parametrize("kind", list(ReservoirKind))
    @pytest.mark.parametrize("nbar", [0.0, 0.5, 4.0])
    def test_negativity_never_increases(self, kind, nbar):
        model = ReservoirModel(kind, gamma=1.0, nbar=nbar)
        for r in (0.1, 0.5, 1.0, 2.0):
            values = [p.negativity for p in trajectory(r, model, times_for_grid(model, 200))]
            assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))

    def test_zero_squeezing_has_zero_negativity(self):
        points = trajectory(0.0, common(0.5), times_for_grid(common(0.5), 20))
        assert all(p.negativity == 0.0 for p in points)

    @pytest.mark.parametrize("kind", list(ReservoirKind))
    @pytest.mark.parametrize("nbar", [0.0, 0.5])
    @pytest.mark.parametrize("bound", ["min", "max"])
    def test_squeezing_at_guardrail_limits(self, kind, nbar, bound):
        r = RUN_PARAMS["r"][bound]
        model = ReservoirModel(kind, gamma=1.0, nbar=nbar)
        points = trajectory(r, model, times_for_grid(model, 50))
        assert points[0].negativity == pytest.approx(2.0 * abs(r) / math.log(2.0), abs=1e-8)
        assert points[0].purity == pytest.approx(1.0, abs=1e-8)
        assert all(0.0 < p.purity <= 1.0 for p in points)
        assert all(p.negativity >= 0.0 for p in points)

"""Tests for the distancing decision and meeting optimization."""

import math

import pytest
from hypothesis import assume, given, strategies as st

from epigames import (
    CostBenefitFunction,
    Decision,
    DistancingParams,
    DomainError,
    GroupMeeting,
    MeetingDomain,
    curve_series,
    distancing_utility,
    extended_go_decision,
    group_infection_probability,
    optimal_meeting,
    oracle,
    stay_home_decision,
    z_objective,
)

# September-2020 US estimates: mortality, active-case share, statistical life
US_MORTALITY = 0.034
US_ACTIVE_SHARE = 0.0077
US_LIFE_VALUE = 11.3e6


def us_params(benefit, home_cost, life_value=US_LIFE_VALUE):
    return DistancingParams(benefit, home_cost, US_MORTALITY, life_value, US_ACTIVE_SHARE)


class TestDistancingUtility:
    def test_staying_home_costs_the_home_cost(self):
        assert distancing_utility(0.0, us_params(3000, 250)) == -250.0

    def test_risk_exactly_offsets_benefit(self):
        params = DistancingParams(
            0.0077 * 0.034 * 11.3e6, 0.0, 0.034, 11.3e6, 0.0077
        )
        assert distancing_utility(1.0, params) == 0.0

    def test_going_out_with_large_benefit(self):
        # 3000 - 0.0077 * 0.034 * 11.3e6 = 3000 - 2958.34
        assert distancing_utility(1.0, us_params(3000, 0)) == pytest.approx(41.7, abs=0.1)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 5000), st.floats(0, 5000))
    def test_utility_is_affine_with_boundary_optimum(self, p, mid, benefit, home_cost):
        assume(0 < mid < 1)
        params = us_params(benefit, home_cost)
        u0, u1 = distancing_utility(0.0, params), distancing_utility(1.0, params)
        assert distancing_utility(mid, params) == pytest.approx(
            u0 + mid * (u1 - u0), abs=1e-9
        )
        assert max(u0, u1) >= distancing_utility(p, params) - 1e-9


class TestStayHomeDecision:
    def test_life_value_multiplier_matches_risk_figures(self):
        # threshold on B + C = 1 is 1 / (rho * m)
        result = stay_home_decision(us_params(1.0, 0.0))
        assert result.life_value_threshold == pytest.approx(3819.7, abs=0.1)

    def test_modest_stakes_mean_staying_home(self):
        result = stay_home_decision(us_params(2000, 958))
        assert result.decision is Decision.STAY
        assert result.life_value_threshold < US_LIFE_VALUE

    def test_large_stakes_mean_going_out(self):
        assert stay_home_decision(us_params(3000, 0)).decision is Decision.GO

    def test_no_risk_always_goes_out(self):
        params = DistancingParams(10, 10, 0.034, 1e9, 0.0)
        result = stay_home_decision(params)
        assert result.decision is Decision.GO
        assert math.isinf(result.life_value_threshold)

    @given(
        st.floats(1, 1e4),
        st.floats(0, 1e4),
        st.floats(1e-4, 1),
        st.floats(1e-4, 1),
        st.floats(1, 1e8),
        st.floats(0.001, 1000),
    )
    def test_decision_invariant_under_joint_rescaling(self, b, c, m, rho, life, k):
        base = DistancingParams(b, c, m, life, rho)
        decision = stay_home_decision(base)
        # keep clear of the razor edge where rescaling rounding could flip
        assume(abs(decision.life_value_threshold - life) > 1e-6 * life)
        scaled = DistancingParams(b * k, c * k, m, life * k, rho)
        assert stay_home_decision(scaled).decision is decision.decision


class TestGroupInfectionProbability:
    def test_unit_exposure_reduces_to_base_probability(self):
        prob = group_infection_probability(0.3, GroupMeeting(1.0, 1.0))
        assert prob == pytest.approx(0.3, abs=1e-12)

    def test_no_base_risk_means_no_risk(self):
        assert group_infection_probability(0.0, GroupMeeting(50, 2)) == 0.0

    def test_six_person_hours_at_us_prevalence(self):
        prob = group_infection_probability(0.0077, GroupMeeting(2, 3))
        assert prob == pytest.approx(0.0453, abs=1e-4)

    @given(
        st.floats(0, 1),
        st.floats(0.1, 50),
        st.floats(0.1, 50),
        st.floats(1.01, 2),
    )
    def test_monotone_in_exposure_and_risk(self, rho, g, t, factor):
        base = group_infection_probability(rho, GroupMeeting(g, t))
        assert base <= group_infection_probability(rho, GroupMeeting(g * factor, t)) + 1e-12
        assert base <= group_infection_probability(rho, GroupMeeting(g, t * factor)) + 1e-12
        if rho < 0.99:
            higher = group_infection_probability(min(1.0, rho * factor), GroupMeeting(g, t))
            assert base <= higher + 1e-12

    def test_saturates_for_long_meetings(self):
        assert group_infection_probability(0.2, GroupMeeting(100, 100)) == pytest.approx(1.0)


class TestZObjective:
    def test_unit_exposure_matches_single_meeting_model(self):
        value = z_objective(
            1.0,
            CostBenefitFunction.constant(1000),
            CostBenefitFunction.constant(500),
            US_ACTIVE_SHARE,
            US_MORTALITY,
        )
        assert value == pytest.approx(5.73e6, abs=1e4)

    def test_small_exposure_limit_for_proportional_stakes(self):
        # (B + C)(z) = 15 z, and 1 - (1-rho)^z ~ -z ln(1-rho) as z -> 0
        value = z_objective(
            1e-6,
            CostBenefitFunction.linear(10, 0),
            CostBenefitFunction.linear(5, 0),
            US_ACTIVE_SHARE,
            US_MORTALITY,
        )
        limit = 15 / (-math.log(1 - US_ACTIVE_SHARE) * US_MORTALITY)
        assert value == pytest.approx(limit, rel=1e-3)

    @given(st.floats(0.1, 100), st.floats(0.001, 0.999), st.floats(0.001, 1))
    def test_composes_group_infection_probability(self, z, rho, m):
        benefit = CostBenefitFunction.linear(3, 10)
        cost = CostBenefitFunction.constant(5)
        direct = z_objective(z, benefit, cost, rho, m)
        composed = (benefit(z) + cost(z)) / (
            group_infection_probability(rho, GroupMeeting(z, 1.0)) * m
        )
        assert direct == pytest.approx(composed, rel=1e-12)

    def test_rejects_degenerate_inputs(self):
        benefit = CostBenefitFunction.constant(10)
        cost = CostBenefitFunction.constant(5)
        with pytest.raises(DomainError, match="infection probability"):
            z_objective(1.0, benefit, cost, 0.0, 0.034)
        with pytest.raises(DomainError, match="mortality"):
            z_objective(1.0, benefit, cost, 0.5, 0.0)
        with pytest.raises(DomainError, match="z must be positive"):
            z_objective(0.0, benefit, cost, 0.5, 0.5)


class TestOptimalMeeting:
    def test_constant_stakes_favor_the_shortest_meeting(self):
        domain = MeetingDomain(0.1, 100, 1000)
        benefit = CostBenefitFunction.constant(1000)
        cost = CostBenefitFunction.constant(500)
        result = optimal_meeting(benefit, cost, US_ACTIVE_SHARE, US_MORTALITY, domain)
        assert result.z_star == domain.z_min
        assert result.value == pytest.approx(
            z_objective(domain.z_min, benefit, cost, US_ACTIVE_SHARE, US_MORTALITY)
        )

    def test_proportional_stakes_favor_the_longest_meeting(self):
        domain = MeetingDomain(0.1, 100, 1000)
        result = optimal_meeting(
            CostBenefitFunction.linear(10, 0),
            CostBenefitFunction.linear(5, 0),
            US_ACTIVE_SHARE,
            US_MORTALITY,
            domain,
        )
        assert result.z_star == domain.z_max

    def test_mixed_stakes_agree_with_a_finer_grid(self):
        domain = MeetingDomain(0.1, 100, 500)
        benefit = CostBenefitFunction.linear(10, 0)
        cost = CostBenefitFunction.constant(500)
        result = optimal_meeting(benefit, cost, US_ACTIVE_SHARE, US_MORTALITY, domain)
        fine = oracle.grid_argmin(
            lambda z: -z_objective(z, benefit, cost, US_ACTIVE_SHARE, US_MORTALITY),
            domain.z_min,
            domain.z_max,
            10 * domain.grid_steps + 1,
        )
        coarse_step = (domain.z_max - domain.z_min) / domain.grid_steps
        assert abs(result.z_star - fine.x_star) <= coarse_step
        assert result.value >= -fine.f_star - 1e-9

    @given(st.floats(0.5, 20), st.floats(0, 300), st.floats(0.001, 0.5))
    def test_value_dominates_every_grid_sample(self, slope, constant, rho):
        domain = MeetingDomain(0.5, 60, 200)
        benefit = CostBenefitFunction.linear(slope, 0)
        cost = CostBenefitFunction.constant(constant)
        result = optimal_meeting(benefit, cost, rho, 0.1, domain)
        for z in domain.grid():
            assert result.value >= z_objective(z, benefit, cost, rho, 0.1) - 1e-9


class TestExtendedGoDecision:
    def test_huge_constant_stakes_go_at_minimum_exposure(self):
        domain = MeetingDomain(0.1, 100, 500)
        result = extended_go_decision(
            CostBenefitFunction.constant(5000),
            CostBenefitFunction.constant(0),
            US_ACTIVE_SHARE,
            US_MORTALITY,
            US_LIFE_VALUE,
            domain,
        )
        assert result.decision is Decision.GO
        assert result.z_star == domain.z_min

    def test_priceless_life_stays_home(self):
        result = extended_go_decision(
            CostBenefitFunction.constant(5000),
            CostBenefitFunction.constant(0),
            US_ACTIVE_SHARE,
            US_MORTALITY,
            1e15,
            MeetingDomain(0.1, 100, 500),
        )
        assert result == (Decision.STAY, None)

    def test_us_figures_with_modest_stakes_stay_home(self):
        # constant stakes of 2900 against an 11.3M life value; from one
        # person-hour up the objective tops out at 2900 * 3819.7 = 1.108e7
        result = extended_go_decision(
            CostBenefitFunction.constant(2900),
            CostBenefitFunction.constant(0),
            US_ACTIVE_SHARE,
            US_MORTALITY,
            US_LIFE_VALUE,
            MeetingDomain(1.0, 100, 1000),
        )
        assert result == (Decision.STAY, None)

    @given(st.floats(100, 1e6), st.floats(100, 1e6), st.floats(1e3, 1e12))
    def test_agrees_with_basic_decision_at_unit_exposure(self, b, c, life):
        # with constant stakes and the window pinned at z = 1 the meeting
        # model reduces to the single-outing decision
        params = DistancingParams(b, c, US_MORTALITY, life, US_ACTIVE_SHARE)
        basic = stay_home_decision(params)
        assume(abs(basic.life_value_threshold - life) > 1e-6 * life)
        extended = extended_go_decision(
            CostBenefitFunction.constant(b),
            CostBenefitFunction.constant(c),
            US_ACTIVE_SHARE,
            US_MORTALITY,
            life,
            MeetingDomain(1.0, 100, 200),
        )
        assert extended.decision is basic.decision


class TestCurveSeries:
    def test_series_has_grid_steps_plus_one_samples(self):
        domain = MeetingDomain(0.1, 100, 250)
        series = curve_series(
            CostBenefitFunction.constant(10),
            CostBenefitFunction.constant(5),
            0.01,
            0.1,
            domain,
        )
        assert len(series) == domain.grid_steps + 1
        assert series[0][0] == domain.z_min
        assert series[-1][0] == domain.z_max

    def test_first_sample_matches_direct_evaluation(self):
        domain = MeetingDomain(0.2, 50, 100)
        benefit = CostBenefitFunction.linear(2, 1)
        cost = CostBenefitFunction.constant(5)
        series = curve_series(benefit, cost, 0.05, 0.2, domain)
        assert series[0][1] == z_objective(domain.z_min, benefit, cost, 0.05, 0.2)

    def test_constant_stakes_series_strictly_decreases(self):
        series = curve_series(
            CostBenefitFunction.constant(10),
            CostBenefitFunction.constant(5),
            0.01,
            0.1,
            MeetingDomain(0.1, 100, 250),
        )
        values = [value for _, value in series]
        assert all(earlier > later for earlier, later in zip(values, values[1:]))


class TestInputTypes:
    def test_meeting_domain_bounds(self):
        with pytest.raises(ValueError, match="z_min < z_max"):
            MeetingDomain(5, 5)
        with pytest.raises(ValueError, match="z_max <= 100"):
            MeetingDomain(1, 200)
        with pytest.raises(ValueError, match="grid_steps"):
            MeetingDomain(1, 10, 0)

    def test_group_meeting_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            GroupMeeting(0, 1)

    def test_group_meeting_domain_membership(self):
        domain = MeetingDomain(1, 10, 10)
        assert GroupMeeting(2, 3).within(domain)
        assert not GroupMeeting(4, 3).within(domain)

    def test_cost_benefit_function_validation(self):
        with pytest.raises(ValueError, match="kind"):
            CostBenefitFunction("quadratic", 1, 1)
        with pytest.raises(ValueError, match="non-negative"):
            CostBenefitFunction.linear(-1, 0)
        with pytest.raises(ValueError, match="slope"):
            CostBenefitFunction("constant", 1, 1)

    def test_cost_benefit_function_encoding_round_trips(self):
        fn = CostBenefitFunction.linear(0.1, 2.5)
        assert fn.encode() == "linear:0.1,2.5"
        assert CostBenefitFunction.constant(4).encode() == "constant:4.0"

    def test_distancing_params_ranges(self):
        with pytest.raises(ValueError, match="mortality"):
            DistancingParams(1, 1, 1.5, 1, 0.5)
        with pytest.raises(ValueError, match="non-negative"):
            DistancingParams(-1, 1, 0.5, 1, 0.5)

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "h2dri/sf_flex.hpp"

using namespace h2dri;

namespace {
SfFlexParams default_params() { return SfFlexParams{}; }
}  // namespace

TEST_CASE("steady state is a fixpoint of the transition") {
    const auto p = default_params();
    CHECK(transition_step(125.0, 125.0, p) == Catch::Approx(125.0).margin(1e-12));
}

TEST_CASE("one-step ramp-up lands where the lag model says") {
    SfFlexParams p;
    p.t_trans_h = 1.27;
    p.dt_h = 1.0;
    const double got = transition_step(30.0, 125.0, p);
    const double want = 125.0 + (30.0 - 125.0) * std::exp(-1.0 / 1.27);
    CHECK(got == Catch::Approx(want).margin(1e-12));
    CHECK(got == Catch::Approx(81.77).margin(0.01));
}

TEST_CASE("vanishing time constant collapses the lag") {
    SfFlexParams p;
    p.t_trans_h = 1e-12;
    CHECK(transition_step(150.0, 30.0, p) == Catch::Approx(30.0).margin(1e-9));
}

TEST_CASE("setpoints outside the discharge band are rejected") {
    const auto p = default_params();
    CHECK_THROWS_AS(transition_step(20.0, 125.0, p), ValidationError);
    CHECK_THROWS_AS(transition_step(125.0, 160.0, p), ValidationError);
}

TEST_CASE("transition output stays between its two setpoints") {
    std::mt19937_64 rng(42);
    auto uni = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 2000; ++i) {
        SfFlexParams p;
        p.t_trans_h = uni(0.05, 10.0);
        const double a = uni(30.0, 150.0);
        const double b = uni(30.0, 150.0);
        const double y = transition_step(a, b, p);
        CHECK(y >= std::min(a, b) - 1e-9);
        CHECK(y <= std::max(a, b) + 1e-9);
    }
}

TEST_CASE("for fixed setpoints the output is monotone in the lag factor") {
    // larger beta = slower plant = output closer to the previous setpoint
    const double a = 40.0, b = 140.0;
    double prev = -1.0;
    for (double beta = 0.05; beta < 1.0; beta += 0.05) {
        SfFlexParams p;
        p.t_trans_h = -1.0 / std::log(beta);
        const double y = transition_step(a, b, p);
        if (prev >= 0.0) CHECK(y <= prev + 1e-12);  // moving toward a = 40 as beta grows
        prev = y;
    }
}

TEST_CASE("hydrogen draw scales linearly with discharge") {
    SfFlexParams p;
    p.phi_h2 = 25.29 / 150.0;
    CHECK(h2_consumption(150.0, p) == Catch::Approx(25.29).margin(1e-12));
    CHECK(h2_consumption(0.0, p) == 0.0);
    p.phi_h2 = 0.1686;
    CHECK(h2_consumption(125.0, p) == Catch::Approx(21.075).margin(1e-12));
    CHECK_THROWS_AS(h2_consumption(-1.0, p), ValidationError);
}

TEST_CASE("metallization band check flags the first excursion") {
    const double sp = 0.94, band = 0.005;
    std::vector<double> met(10, sp);
    CHECK(check_metallization(met, sp, band).pass);

    met[6] = sp + 0.006;
    const auto r = check_metallization(met, sp, band);
    CHECK_FALSE(r.pass);
    CHECK(r.first_violation == 6);
    CHECK(r.worst_abs_dev == Catch::Approx(0.006).margin(1e-12));

    Trajectory traj;
    traj.qss = {125.0, 125.0};
    traj.dis = {125.0, 125.0};
    CHECK_THROWS_AS(check_metallization(traj, sp, band), ValidationError);
}

TEST_CASE("plans violating band or ramp limits are rejected before use") {
    const auto p = default_params();  // ramp +-120 t/h
    const std::vector<double> out_of_band{30.0, 155.0};
    CHECK_THROWS_AS(check_plan(out_of_band, p), ValidationError);

    SfFlexParams tight = p;
    tight.ramp_up_tph = 50.0;
    const std::vector<double> too_steep{30.0, 100.0};
    CHECK_THROWS_AS(check_plan(too_steep, tight), ValidationError);
    const std::vector<double> ok{30.0, 80.0, 130.0, 100.0};
    CHECK_NOTHROW(check_plan(ok, tight));
}

TEST_CASE("predicted trajectory chains single transitions") {
    const auto p = default_params();
    const std::vector<double> plan{30.0, 125.0, 125.0, 60.0};
    const auto dis = predict_trajectory(plan, p);
    REQUIRE(dis.size() == plan.size());
    CHECK(dis[0] == plan[0]);
    for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
        CHECK(dis[k + 1] == Catch::Approx(transition_step(plan[k], plan[k + 1], p)).margin(1e-12));
    }
}

TEST_CASE("parameter validation catches inverted or degenerate settings") {
    SfFlexParams p;
    p.t_trans_h = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = SfFlexParams{};
    p.m_min_tph = 160.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = SfFlexParams{};
    p.ramp_dn_tph = 10.0;  // must be <= 0
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = SfFlexParams{};
    CHECK(p.beta() == Catch::Approx(std::exp(-1.0 / 1.27)).margin(1e-15));
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace h2dri;
namespace ht = h2dri::testing;

namespace {

const BranchAndBoundEngine kEngine;

void expect_agreement(ScenarioConfig cfg, Mode mode) {
    cfg.mode = mode;
    const auto fast = solve(build_problem(cfg), kEngine);
    const auto slow = brute_force_oracle(cfg);
    REQUIRE(fast.status == slow.status);
    if (fast.status == SolveStatus::Optimal) {
        const double rel = std::abs(fast.objective_usd - slow.objective_usd) /
                           std::max(1.0, std::abs(slow.objective_usd));
        INFO(mode_name(mode) << ": engine " << fast.objective_usd << " vs enumeration "
                             << slow.objective_usd);
        CHECK(rel <= 1e-6);
    }
}

}  // namespace

TEST_CASE("engine matches enumeration on a two-hour scenario") {
    const auto cfg = synth_scenario(1, 2);
    for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) expect_agreement(cfg, m);
}

TEST_CASE("flat prices leave the tie-break to decide, objectives still agree") {
    auto cfg = synth_scenario(2, 4);
    for (int t = 0; t < 4; ++t) {
        cfg.prices_buy.values[static_cast<std::size_t>(t)] = 55.0;
        cfg.prices_sell.values[static_cast<std::size_t>(t)] = 55.0;
    }
    for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) expect_agreement(cfg, m);
}

TEST_CASE("infeasible orders agree on the verdict") {
    std::mt19937_64 rng(3);
    const auto cfg = ht::oversized_order_scenario(rng, 3);
    for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) {
        ScenarioConfig c = cfg;
        c.mode = m;
        const auto fast = solve(build_problem(c), kEngine);
        const auto slow = brute_force_oracle(c);
        CHECK(fast.status == SolveStatus::Infeasible);
        CHECK(slow.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("enumeration refuses horizons it cannot cover") {
    const auto cfg = synth_scenario(1, 5);
    CHECK_THROWS_AS(brute_force_oracle(cfg), ValidationError);
}

TEST_CASE("randomized small scenarios agree across modes") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        const int T = 2 + static_cast<int>(rng() % 3);  // 2..4
        const auto cfg = ht::random_feasible_scenario(rng, T);
        expect_agreement(cfg, static_cast<Mode>(trial % 3));
    }
}

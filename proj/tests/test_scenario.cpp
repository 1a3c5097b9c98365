#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "test_support.hpp"

using namespace h2dri;
namespace ht = h2dri::testing;

TEST_CASE("synthetic scenarios are deterministic in the seed") {
    const auto a = synth_scenario(1, 24);
    const auto b = synth_scenario(1, 24);
    REQUIRE(a.prices_buy.values == b.prices_buy.values);
    REQUIRE(a.wind.values == b.wind.values);
    REQUIRE(a.pv.values == b.pv.values);
    CHECK(a.scenario_id() == b.scenario_id());

    const auto c = synth_scenario(2, 24);
    CHECK(a.prices_buy.values != c.prices_buy.values);
}

TEST_CASE("synthetic buy price bottoms out in the night valley") {
    for (const std::uint64_t seed : {1ull, 2ull, 7ull, 40ull, 1234ull}) {
        const auto cfg = synth_scenario(seed, 24);
        int argmin = 0;
        for (int t = 1; t < 24; ++t) {
            if (cfg.prices_buy.values[t] < cfg.prices_buy.values[argmin]) argmin = t;
        }
        const int hour = argmin + 1;
        INFO("seed " << seed << " min at hour " << hour);
        CHECK(hour >= 3);
        CHECK(hour <= 6);
    }
}

TEST_CASE("synthetic scenario respects every declared invariant") {
    const auto cfg = synth_scenario(9, 36);
    REQUIRE_NOTHROW(cfg.validate());
    for (int t = 0; t < 36; ++t) {
        CHECK(cfg.prices_sell.values[t] <= cfg.prices_buy.values[t]);
        CHECK(cfg.wind.values[t] >= 0.0);
        CHECK(cfg.pv.values[t] >= 0.0);
    }
    CHECK(cfg.plant.big_m_mw >= cfg.required_big_m() - 1e-9);
}

TEST_CASE("save then load reproduces the scenario field for field") {
    const auto dir = ht::make_temp_dir("roundtrip");
    auto cfg = synth_scenario(5, 24);
    cfg.mode = Mode::AeSfFlex;
    cfg.plant.kappa_h2_mwh_per_t = 47.5;
    cfg.plant.big_m_mw = cfg.required_big_m() + 123.456789012345;
    save_scenario(cfg, dir / "s.json");
    const auto back = load_scenario(dir / "s.json");

    CHECK(back.horizon_t == cfg.horizon_t);
    CHECK(back.dri_order_t == cfg.dri_order_t);
    CHECK(back.mode == cfg.mode);
    CHECK(back.prices_buy.values == cfg.prices_buy.values);
    CHECK(back.prices_sell.values == cfg.prices_sell.values);
    CHECK(back.wind.values == cfg.wind.values);
    CHECK(back.pv.values == cfg.pv.values);
    CHECK(back.h2_request.values == cfg.h2_request.values);
    CHECK(back.plant.kappa_h2_mwh_per_t == cfg.plant.kappa_h2_mwh_per_t);
    CHECK(back.plant.big_m_mw == cfg.plant.big_m_mw);
    CHECK(back.sf.t_trans_h == cfg.sf.t_trans_h);
    CHECK(back.scenario_id() == cfg.scenario_id());
}

TEST_CASE("series shorter than the horizon is rejected with the file named") {
    const auto dir = ht::make_temp_dir("shortrow");
    const auto cfg = synth_scenario(1, 24);
    save_scenario(cfg, dir / "s.json");
    // drop the last data row
    const auto series = dir / "s_series.csv";
    const std::string all = ht::slurp(series);
    const auto cut = all.rfind("\n", all.size() - 2);
    std::ofstream(series) << all.substr(0, cut + 1);
    try {
        load_scenario(dir / "s.json");
        FAIL("expected a length mismatch error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("23") != std::string::npos);
        CHECK(msg.find("24") != std::string::npos);
        CHECK(msg.find("s_series.csv") != std::string::npos);
    }
}

TEST_CASE("baseline rate at the discharge ceiling is accepted") {
    const auto dir = ht::make_temp_dir("boundary");
    auto cfg = synth_scenario(1, 24);
    cfg.dri_order_t = 150.0 * 24.0;  // exactly the upper bound rate
    REQUIRE_NOTHROW(cfg.validate());
    save_scenario(cfg, dir / "s.json");
    REQUIRE_NOTHROW(load_scenario(dir / "s.json"));

    cfg.dri_order_t = 150.5 * 24.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.dri_order_t = 29.0 * 24.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("selling above the purchase price is rejected with the hour named") {
    auto cfg = synth_scenario(1, 24);
    cfg.prices_sell.values[12] = cfg.prices_buy.values[12] + 1.0;
    try {
        cfg.validate();
        FAIL("expected a price ordering error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("[13]") != std::string::npos);
    }
}

TEST_CASE("negative power values are rejected") {
    auto cfg = synth_scenario(1, 24);
    cfg.wind.values[3] = -5.0;
    try {
        cfg.validate();
        FAIL("expected a negativity error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("wind_mw[4]") != std::string::npos);
    }
}

TEST_CASE("unknown config keys and malformed files are rejected") {
    const auto dir = ht::make_temp_dir("badjson");
    const auto cfg = synth_scenario(1, 24);
    save_scenario(cfg, dir / "s.json");

    SECTION("unknown top-level key") {
        nlohmann::json j;
        std::ifstream(dir / "s.json") >> j;
        j["unknown_knob"] = 1.0;
        std::ofstream(dir / "s.json") << j.dump(2);
        CHECK_THROWS_AS(load_scenario(dir / "s.json"), ValidationError);
    }
    SECTION("unknown plant key") {
        nlohmann::json j;
        std::ifstream(dir / "s.json") >> j;
        j["plant"]["not_a_parameter"] = 2.0;
        std::ofstream(dir / "s.json") << j.dump(2);
        CHECK_THROWS_AS(load_scenario(dir / "s.json"), ValidationError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_scenario(dir / "nope.json"), ValidationError);
    }
    SECTION("invalid json") {
        std::ofstream(dir / "s.json") << "{ not json";
        CHECK_THROWS_AS(load_scenario(dir / "s.json"), ValidationError);
    }
    SECTION("wrong value types surface as validation errors") {
        nlohmann::json j;
        std::ifstream(dir / "s.json") >> j;
        j["series_csv"] = 12;
        std::ofstream(dir / "s.json") << j.dump(2);
        CHECK_THROWS_AS(load_scenario(dir / "s.json"), ValidationError);
    }
    SECTION("hour column must run 1..T") {
        const auto series = dir / "s_series.csv";
        std::string all = ht::slurp(series);
        const auto pos = all.find("\n2,");
        all.replace(pos, 3, "\n9,");
        std::ofstream(series) << all;
        CHECK_THROWS_AS(load_scenario(dir / "s.json"), ValidationError);
    }
}

TEST_CASE("undersized big-M is rejected, auto big-M is filled in") {
    auto cfg = synth_scenario(1, 24);
    cfg.plant.big_m_mw = 100.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.plant.big_m_mw = 0.0;
    cfg.materialize_big_m();
    CHECK(cfg.plant.big_m_mw >= cfg.required_big_m() - 1e-9);
}

TEST_CASE("conflicting hydrogen coefficients between plant and furnace are rejected") {
    auto cfg = synth_scenario(1, 24);
    cfg.sf.phi_h2 = cfg.plant.phi_h2 + 0.01;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("mode names round-trip and unknown names are rejected") {
    for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) {
        CHECK(mode_from_name(mode_name(m)) == m);
    }
    CHECK_THROWS_AS(mode_from_name("turbo"), ValidationError);
}

// property: whatever mutation a config file suffers, load_scenario either
// rejects it or returns a config that passes full validation
TEST_CASE("loader never returns an invalid configuration") {
    const auto dir = ht::make_temp_dir("mutation");
    std::mt19937_64 rng(99);
    int loaded = 0, rejected = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto cfg = synth_scenario(trial + 1, 24);
        save_scenario(cfg, dir / "m.json");

        const int kind = static_cast<int>(rng() % 6);
        if (kind == 0) {  // corrupt one series cell, possibly to a negative value
            auto t = read_csv(dir / "m_series.csv");
            auto& cell = t.rows[rng() % t.rows.size()][1 + rng() % 5];
            cell = (rng() % 2 ? -1.0 : 3.0) * (cell + 1.0);
            std::vector<std::vector<double>> rows = t.rows;
            write_csv(dir / "m_series.csv", t.header, rows);
        } else if (kind == 1) {  // truncate the series
            const std::string all = ht::slurp(dir / "m_series.csv");
            std::ofstream(dir / "m_series.csv") << all.substr(0, all.size() / 2);
        } else if (kind == 2) {  // scramble a plant parameter
            nlohmann::json j;
            std::ifstream(dir / "m.json") >> j;
            j["plant"]["gamma_in"] = static_cast<double>(rng() % 4) - 1.0;  // in {-1,0,1,2}
            std::ofstream(dir / "m.json") << j.dump(2);
        } else if (kind == 3) {  // out-of-band order
            nlohmann::json j;
            std::ifstream(dir / "m.json") >> j;
            j["dri_order_t"] = static_cast<double>(rng() % 8000);
            std::ofstream(dir / "m.json") << j.dump(2);
        } else if (kind == 4) {  // bad mode string
            nlohmann::json j;
            std::ifstream(dir / "m.json") >> j;
            j["mode"] = "flex-harder";
            std::ofstream(dir / "m.json") << j.dump(2);
        }  // kind 5: untouched

        try {
            const auto back = load_scenario(dir / "m.json");
            REQUIRE_NOTHROW(back.validate());
            ++loaded;
        } catch (const ValidationError&) {
            ++rejected;
        }
    }
    CHECK(loaded > 5);
    CHECK(rejected > 5);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "h2dri/csv.hpp"
#include "h2dri/errors.hpp"
#include "h2dri/plant_params.hpp"
#include "h2dri/sf_flex.hpp"
#include "h2dri/timeseries.hpp"

namespace h2dri {

enum class Mode { Baseline, AeFlex, AeSfFlex };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Baseline: return "baseline";
        case Mode::AeFlex: return "ae-flex";
        case Mode::AeSfFlex: return "ae-sf-flex";
    }
    return "?";
}

inline Mode mode_from_name(const std::string& s) {
    if (s == "baseline") return Mode::Baseline;
    if (s == "ae-flex") return Mode::AeFlex;
    if (s == "ae-sf-flex") return Mode::AeSfFlex;
    throw ValidationError("unknown mode '" + s + "' (expected baseline, ae-flex or ae-sf-flex)");
}

// The full input to one study: horizon, exogenous profiles, the production
// order and every plant parameter.
struct ScenarioConfig {
    int horizon_t = 24;
    TimeSeries prices_buy{1, {}, Unit::UsdPerMwh};
    TimeSeries prices_sell{1, {}, Unit::UsdPerMwh};
    TimeSeries wind{1, {}, Unit::Mw};
    TimeSeries pv{1, {}, Unit::Mw};
    TimeSeries h2_request{1, {}, Unit::TonPerHour};
    double dri_order_t = 0.0;
    PlantParams plant;
    SfFlexParams sf;
    Mode mode = Mode::Baseline;

    double baseline_rate_tph() const { return dri_order_t / horizon_t; }

    // Smallest admissible big-M: the sum of every generation and load
    // capacity bound that can meet the grid connection.
    double required_big_m() const {
        double res_peak = 0.0;
        for (int t = 0; t < horizon_t; ++t) {
            const std::size_t i = static_cast<std::size_t>(t);
            double w = i < wind.size() ? wind[i] : 0.0;
            double s = i < pv.size() ? pv[i] : 0.0;
            res_peak = std::max(res_peak, w + s);
        }
        const double exp_power_cap = plant.exp_coeff_mwh_per_t * plant.exp_flow_cap_tph;
        const double eh_cap = plant.eh_net_coeff_mwh_per_t() * sf.m_max_tph / sf.dt_h;
        const double comp_cap = plant.comp_coeff_mwh_per_t * plant.h2_in_max_tph();
        return res_peak + exp_power_cap + plant.ae_max_mw() + eh_cap + comp_cap + plant.leh_cap_mw;
    }

    void validate() const {
        if (horizon_t < 1) throw ValidationError("horizon_t: must be at least 1");
        plant.validate();
        sf.validate();
        if (std::abs(plant.phi_h2 - sf.phi_h2) > 1e-12) {
            throw ValidationError("plant.phi_h2 and sf.phi_h2 disagree; they are the same coefficient");
        }
        const auto T = static_cast<std::size_t>(horizon_t);
        prices_buy.validate("price_buy", T);
        prices_sell.validate("price_sell", T);
        wind.validate("wind_mw", T);
        pv.validate("pv_mw", T);
        h2_request.validate("h2_request_t", T);
        for (std::size_t i = 0; i < T; ++i) {
            if (prices_sell[i] > prices_buy[i] + 1e-12) {
                throw ValidationError("price_sell[" + std::to_string(i + 1) + "] = " +
                                      std::to_string(prices_sell[i]) + " exceeds price_buy = " +
                                      std::to_string(prices_buy[i]));
            }
        }
        if (!(dri_order_t > 0.0) || !std::isfinite(dri_order_t)) {
            throw ValidationError("dri_order_t: must be strictly positive");
        }
        const double rate = baseline_rate_tph();
        if (rate < sf.m_min_tph - 1e-9 || rate > sf.m_max_tph + 1e-9) {
            throw ValidationError("dri_order_t / horizon_t = " + std::to_string(rate) +
                                  " t/h outside the discharge band [" + std::to_string(sf.m_min_tph) +
                                  ", " + std::to_string(sf.m_max_tph) + "]; the baseline schedule cannot exist");
        }
        if (plant.big_m_mw > 0.0 && plant.big_m_mw < required_big_m() - 1e-9) {
            throw ValidationError("plant.big_m_mw = " + std::to_string(plant.big_m_mw) +
                                  " is below the capacity sum " + std::to_string(required_big_m()));
        }
    }

    // Replaces the big-M auto marker (0) with the derived capacity sum.
    void materialize_big_m() {
        if (plant.big_m_mw <= 0.0) plant.big_m_mw = required_big_m();
    }

    // Stable fingerprint used to reject cross-scenario comparisons.
    std::uint64_t scenario_id() const;
};

namespace detail {

inline void hash_mix(std::uint64_t& h, double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    h ^= bits;
    h *= 0x100000001b3ULL;
}

template <typename T>
double jget(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return static_cast<double>(fallback);
    if (!j.at(key).is_number()) throw ValidationError("config: '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& known,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ValidationError("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

inline const std::vector<std::string>& plant_keys() {
    static const std::vector<std::string> keys = {
        "phi_h2", "gamma_h2_mwh_per_t", "kappa_h2_mwh_per_t", "ae_single_min_mw",
        "ae_single_max_mw", "n_ae", "ht_min_t", "ht_max_t", "ht_cap_t", "phi_eh", "gamma_in",
        "gamma_out", "leh_cap_mw", "comp_coeff_mwh_per_t", "exp_coeff_mwh_per_t",
        "exp_flow_cap_tph", "ftg_coeff_mwh_per_t", "whb_coeff_mwh_per_t",
        "sf_heat_coeff_mwh_per_t", "cost_pv_usd_per_mwh", "cost_wind_usd_per_mwh",
        "cost_ore_usd_per_t", "cost_sf_usd_per_t", "cost_ae_usd_per_mwh", "cost_eh_usd_per_mwh",
        "cost_coxp_usd_per_mwh", "cost_hs_usd_per_t", "cost_leh_usd_per_mwh",
        "carbon_tax_usd_per_t", "phi_ec_t_per_mwh", "h2_price_usd_per_t", "big_m_mw"};
    return keys;
}

inline const std::vector<std::string>& sf_keys() {
    static const std::vector<std::string> keys = {"t_trans_h", "dt_h", "m_min_tph", "m_max_tph",
                                                  "ramp_dn_tph", "ramp_up_tph", "m_rated_tph",
                                                  "phi_h2"};
    return keys;
}

inline PlantParams plant_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j, plant_keys(), "plant");
    PlantParams p;
    p.phi_h2 = jget(j, "phi_h2", p.phi_h2);
    p.gamma_h2_mwh_per_t = jget(j, "gamma_h2_mwh_per_t", p.gamma_h2_mwh_per_t);
    p.kappa_h2_mwh_per_t = jget(j, "kappa_h2_mwh_per_t", p.kappa_h2_mwh_per_t);
    p.ae_single_min_mw = jget(j, "ae_single_min_mw", p.ae_single_min_mw);
    p.ae_single_max_mw = jget(j, "ae_single_max_mw", p.ae_single_max_mw);
    p.n_ae = static_cast<int>(jget(j, "n_ae", p.n_ae));
    p.ht_min_t = jget(j, "ht_min_t", p.ht_min_t);
    p.ht_max_t = jget(j, "ht_max_t", p.ht_max_t);
    p.ht_cap_t = jget(j, "ht_cap_t", p.ht_cap_t);
    p.phi_eh = jget(j, "phi_eh", p.phi_eh);
    p.gamma_in = jget(j, "gamma_in", p.gamma_in);
    p.gamma_out = jget(j, "gamma_out", p.gamma_out);
    p.leh_cap_mw = jget(j, "leh_cap_mw", p.leh_cap_mw);
    p.comp_coeff_mwh_per_t = jget(j, "comp_coeff_mwh_per_t", p.comp_coeff_mwh_per_t);
    p.exp_coeff_mwh_per_t = jget(j, "exp_coeff_mwh_per_t", p.exp_coeff_mwh_per_t);
    p.exp_flow_cap_tph = jget(j, "exp_flow_cap_tph", p.exp_flow_cap_tph);
    p.ftg_coeff_mwh_per_t = jget(j, "ftg_coeff_mwh_per_t", p.ftg_coeff_mwh_per_t);
    p.whb_coeff_mwh_per_t = jget(j, "whb_coeff_mwh_per_t", p.whb_coeff_mwh_per_t);
    p.sf_heat_coeff_mwh_per_t = jget(j, "sf_heat_coeff_mwh_per_t", p.sf_heat_coeff_mwh_per_t);
    p.cost_pv_usd_per_mwh = jget(j, "cost_pv_usd_per_mwh", p.cost_pv_usd_per_mwh);
    p.cost_wind_usd_per_mwh = jget(j, "cost_wind_usd_per_mwh", p.cost_wind_usd_per_mwh);
    p.cost_ore_usd_per_t = jget(j, "cost_ore_usd_per_t", p.cost_ore_usd_per_t);
    p.cost_sf_usd_per_t = jget(j, "cost_sf_usd_per_t", p.cost_sf_usd_per_t);
    p.cost_ae_usd_per_mwh = jget(j, "cost_ae_usd_per_mwh", p.cost_ae_usd_per_mwh);
    p.cost_eh_usd_per_mwh = jget(j, "cost_eh_usd_per_mwh", p.cost_eh_usd_per_mwh);
    p.cost_coxp_usd_per_mwh = jget(j, "cost_coxp_usd_per_mwh", p.cost_coxp_usd_per_mwh);
    p.cost_hs_usd_per_t = jget(j, "cost_hs_usd_per_t", p.cost_hs_usd_per_t);
    p.cost_leh_usd_per_mwh = jget(j, "cost_leh_usd_per_mwh", p.cost_leh_usd_per_mwh);
    p.carbon_tax_usd_per_t = jget(j, "carbon_tax_usd_per_t", p.carbon_tax_usd_per_t);
    p.phi_ec_t_per_mwh = jget(j, "phi_ec_t_per_mwh", p.phi_ec_t_per_mwh);
    p.h2_price_usd_per_t = jget(j, "h2_price_usd_per_t", p.h2_price_usd_per_t);
    p.big_m_mw = jget(j, "big_m_mw", p.big_m_mw);
    return p;
}

inline SfFlexParams sf_from_json(const nlohmann::json& j, double default_phi) {
    reject_unknown_keys(j, sf_keys(), "sf");
    SfFlexParams s;
    s.phi_h2 = default_phi;
    s.t_trans_h = jget(j, "t_trans_h", s.t_trans_h);
    s.dt_h = jget(j, "dt_h", s.dt_h);
    s.m_min_tph = jget(j, "m_min_tph", s.m_min_tph);
    s.m_max_tph = jget(j, "m_max_tph", s.m_max_tph);
    s.ramp_dn_tph = jget(j, "ramp_dn_tph", s.ramp_dn_tph);
    s.ramp_up_tph = jget(j, "ramp_up_tph", s.ramp_up_tph);
    s.m_rated_tph = jget(j, "m_rated_tph", s.m_rated_tph);
    s.phi_h2 = jget(j, "phi_h2", s.phi_h2);
    return s;
}

inline nlohmann::json plant_to_json(const PlantParams& p) {
    nlohmann::json j;
    j["phi_h2"] = p.phi_h2;
    j["gamma_h2_mwh_per_t"] = p.gamma_h2_mwh_per_t;
    j["kappa_h2_mwh_per_t"] = p.kappa_h2_mwh_per_t;
    j["ae_single_min_mw"] = p.ae_single_min_mw;
    j["ae_single_max_mw"] = p.ae_single_max_mw;
    j["n_ae"] = p.n_ae;
    j["ht_min_t"] = p.ht_min_t;
    j["ht_max_t"] = p.ht_max_t;
    j["ht_cap_t"] = p.ht_cap_t;
    j["phi_eh"] = p.phi_eh;
    j["gamma_in"] = p.gamma_in;
    j["gamma_out"] = p.gamma_out;
    j["leh_cap_mw"] = p.leh_cap_mw;
    j["comp_coeff_mwh_per_t"] = p.comp_coeff_mwh_per_t;
    j["exp_coeff_mwh_per_t"] = p.exp_coeff_mwh_per_t;
    j["exp_flow_cap_tph"] = p.exp_flow_cap_tph;
    j["ftg_coeff_mwh_per_t"] = p.ftg_coeff_mwh_per_t;
    j["whb_coeff_mwh_per_t"] = p.whb_coeff_mwh_per_t;
    j["sf_heat_coeff_mwh_per_t"] = p.sf_heat_coeff_mwh_per_t;
    j["cost_pv_usd_per_mwh"] = p.cost_pv_usd_per_mwh;
    j["cost_wind_usd_per_mwh"] = p.cost_wind_usd_per_mwh;
    j["cost_ore_usd_per_t"] = p.cost_ore_usd_per_t;
    j["cost_sf_usd_per_t"] = p.cost_sf_usd_per_t;
    j["cost_ae_usd_per_mwh"] = p.cost_ae_usd_per_mwh;
    j["cost_eh_usd_per_mwh"] = p.cost_eh_usd_per_mwh;
    j["cost_coxp_usd_per_mwh"] = p.cost_coxp_usd_per_mwh;
    j["cost_hs_usd_per_t"] = p.cost_hs_usd_per_t;
    j["cost_leh_usd_per_mwh"] = p.cost_leh_usd_per_mwh;
    j["carbon_tax_usd_per_t"] = p.carbon_tax_usd_per_t;
    j["phi_ec_t_per_mwh"] = p.phi_ec_t_per_mwh;
    j["h2_price_usd_per_t"] = p.h2_price_usd_per_t;
    j["big_m_mw"] = p.big_m_mw;
    return j;
}

inline nlohmann::json sf_to_json(const SfFlexParams& s) {
    nlohmann::json j;
    j["t_trans_h"] = s.t_trans_h;
    j["dt_h"] = s.dt_h;
    j["m_min_tph"] = s.m_min_tph;
    j["m_max_tph"] = s.m_max_tph;
    j["ramp_dn_tph"] = s.ramp_dn_tph;
    j["ramp_up_tph"] = s.ramp_up_tph;
    j["m_rated_tph"] = s.m_rated_tph;
    j["phi_h2"] = s.phi_h2;
    return j;
}

}  // namespace detail

inline std::uint64_t ScenarioConfig::scenario_id() const {
    // mode is excluded on purpose: all three modes of one study share the id
    std::uint64_t h = 0xcbf29ce484222325ULL;
    detail::hash_mix(h, static_cast<double>(horizon_t));
    detail::hash_mix(h, dri_order_t);
    for (const auto* ts : {&prices_buy, &prices_sell, &wind, &pv, &h2_request}) {
        for (double v : ts->values) detail::hash_mix(h, v);
    }
    const nlohmann::json jp = detail::plant_to_json(plant);
    for (auto it = jp.begin(); it != jp.end(); ++it) detail::hash_mix(h, it.value().get<double>());
    const nlohmann::json js = detail::sf_to_json(sf);
    for (auto it = js.begin(); it != js.end(); ++it) detail::hash_mix(h, it.value().get<double>());
    return h;
}

// Loads and fully validates a scenario: a JSON config referencing one CSV of
// hourly series with columns hour,price_buy,price_sell,wind_mw,pv_mw,h2_request_t.
inline ScenarioConfig load_scenario(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw ValidationError("cannot open config: " + json_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(json_path.string() + ": invalid JSON: " + e.what());
    }
    detail::reject_unknown_keys(
        j, {"horizon_hours", "dri_order_t", "mode", "series_csv", "plant", "sf"}, "top level");

    ScenarioConfig cfg;
    std::filesystem::path series_path;
    try {
        if (!j.contains("horizon_hours")) throw ValidationError("config: missing 'horizon_hours'");
        cfg.horizon_t = j.at("horizon_hours").get<int>();
        if (!j.contains("dri_order_t")) throw ValidationError("config: missing 'dri_order_t'");
        cfg.dri_order_t = j.at("dri_order_t").get<double>();
        cfg.mode = mode_from_name(j.value("mode", "baseline"));
        cfg.plant = detail::plant_from_json(j.value("plant", nlohmann::json::object()));
        cfg.sf = detail::sf_from_json(j.value("sf", nlohmann::json::object()), cfg.plant.phi_h2);
        if (!j.contains("series_csv")) throw ValidationError("config: missing 'series_csv'");
        series_path = json_path.parent_path() / j.at("series_csv").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(json_path.string() + ": wrong value type: " + e.what());
    }
    const CsvTable t = read_csv(series_path);
    expect_header(t, {"hour", "price_buy", "price_sell", "wind_mw", "pv_mw", "h2_request_t"},
                  series_path.string());
    if (t.rows.size() != static_cast<std::size_t>(cfg.horizon_t)) {
        throw ValidationError(series_path.string() + ": " + std::to_string(t.rows.size()) +
                              " data rows but horizon_hours = " + std::to_string(cfg.horizon_t));
    }
    cfg.prices_buy = {1, {}, Unit::UsdPerMwh};
    cfg.prices_sell = {1, {}, Unit::UsdPerMwh};
    cfg.wind = {1, {}, Unit::Mw};
    cfg.pv = {1, {}, Unit::Mw};
    cfg.h2_request = {1, {}, Unit::TonPerHour};
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (std::llround(t.rows[i][0]) != static_cast<long long>(i + 1)) {
            throw ValidationError(series_path.string() + ": hour column must run 1.." +
                                  std::to_string(cfg.horizon_t) + "; row " + std::to_string(i + 1) +
                                  " has hour " + std::to_string(t.rows[i][0]));
        }
        cfg.prices_buy.values.push_back(t.rows[i][1]);
        cfg.prices_sell.values.push_back(t.rows[i][2]);
        cfg.wind.values.push_back(t.rows[i][3]);
        cfg.pv.values.push_back(t.rows[i][4]);
        cfg.h2_request.values.push_back(t.rows[i][5]);
    }
    cfg.materialize_big_m();
    cfg.validate();
    return cfg;
}

// Writes the config JSON plus its series CSV next to it. Values survive a
// save/load round trip bit-exactly.
inline void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& json_path) {
    cfg.validate();
    const std::string series_name = json_path.stem().string() + "_series.csv";
    nlohmann::json j;
    j["horizon_hours"] = cfg.horizon_t;
    j["dri_order_t"] = cfg.dri_order_t;
    j["mode"] = mode_name(cfg.mode);
    j["series_csv"] = series_name;
    j["plant"] = detail::plant_to_json(cfg.plant);
    j["sf"] = detail::sf_to_json(cfg.sf);
    std::ofstream out(json_path);
    if (!out) throw ValidationError("cannot write config: " + json_path.string());
    out << j.dump(2) << "\n";
    if (!out) throw ValidationError("write failed: " + json_path.string());

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(cfg.horizon_t));
    for (int t = 0; t < cfg.horizon_t; ++t) {
        const auto i = static_cast<std::size_t>(t);
        rows.push_back({static_cast<double>(t + 1), cfg.prices_buy[i], cfg.prices_sell[i],
                        cfg.wind[i], cfg.pv[i], cfg.h2_request[i]});
    }
    write_csv(json_path.parent_path() / series_name,
              {"hour", "price_buy", "price_sell", "wind_mw", "pv_mw", "h2_request_t"}, rows);
}

// Deterministic synthetic day: night price valley (hours 3-6), evening peak,
// midday PV bell, autocorrelated wind, constant hydrogen sales. Stands in
// for measured operating conditions when none are available.
inline ScenarioConfig synth_scenario(std::uint64_t seed, int horizon) {
    if (horizon < 2) throw ValidationError("synth_scenario: horizon must be at least 2");

    // Hour-of-day buy price shape, $/MWh. The 3-6 valley sits more than twice
    // the noise amplitude below any other hour, so the argmin is stable.
    static constexpr double kBuyShape[24] = {46.0, 40.0, 34.0, 31.0, 30.5, 33.0, 48.0, 62.0,
                                             74.0, 80.0, 78.0, 74.0, 70.0, 68.0, 72.0, 78.0,
                                             90.0, 103.0, 110.0, 104.0, 92.0, 74.0, 60.0, 50.0};
    constexpr double kWindCap = 600.0;
    constexpr double kPvCap = 400.0;

    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };

    ScenarioConfig cfg;
    cfg.horizon_t = horizon;
    cfg.mode = Mode::Baseline;
    cfg.dri_order_t = 70.0 * horizon;
    cfg.prices_buy = {1, {}, Unit::UsdPerMwh};
    cfg.prices_sell = {1, {}, Unit::UsdPerMwh};
    cfg.wind = {1, {}, Unit::Mw};
    cfg.pv = {1, {}, Unit::Mw};
    cfg.h2_request = {1, {}, Unit::TonPerHour};

    double wind_state = uniform(-0.1, 0.1);
    const double wind_phase = uniform(0.0, 6.283185307179586);
    const double pv_day_factor = uniform(0.75, 1.0);
    for (int t = 0; t < horizon; ++t) {
        const int hod = t % 24;  // 0-based hour of day
        const double buy = kBuyShape[hod] + uniform(-2.0, 2.0);
        cfg.prices_buy.values.push_back(buy);
        cfg.prices_sell.values.push_back(0.85 * buy);

        wind_state = 0.7 * wind_state + uniform(-0.15, 0.15);
        const double wind_frac = std::clamp(
            0.55 + 0.35 * std::sin(2.0 * 3.141592653589793 * t / 16.0 + wind_phase) + wind_state,
            0.05, 0.98);
        cfg.wind.values.push_back(kWindCap * wind_frac);

        double pv = 0.0;
        if (hod + 1 >= 7 && hod + 1 <= 18) {
            const double bell = std::sin(3.141592653589793 * (hod + 1 - 6) / 13.0);
            pv = kPvCap * pv_day_factor * std::pow(std::max(0.0, bell), 1.5);
        }
        cfg.pv.values.push_back(pv);
        cfg.h2_request.values.push_back(0.5);
    }
    cfg.materialize_big_m();
    cfg.validate();
    return cfg;
}

}  // namespace h2dri

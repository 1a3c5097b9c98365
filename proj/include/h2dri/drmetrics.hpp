#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"

#include "h2dri/solve.hpp"

namespace h2dri {

// What counts as "plant power" when two schedules are compared. The default
// reads it as net grid exchange (purchase minus sale); the alternative sums
// the consuming units instead.
enum class NetPowerDef { GridExchange, GrossConsumption };

struct DrReport {
    std::vector<double> delta_p_mw;  // per hour
    double avg_delta_p_mw = 0.0;
    double cost_per_ton_baseline = 0.0;
    double cost_per_ton_dr = 0.0;
    double reduction_pct = 0.0;  // cost reduction relative to baseline
};

namespace detail {
inline double plant_power_mw(const ScheduleSolution& s, int t, NetPowerDef def) {
    if (def == NetPowerDef::GridExchange) return s.net_exchange_mw(t);
    const auto i = static_cast<std::size_t>(t - 1);
    return s.series(VarKind::PAe)[i] + s.series(VarKind::PComp)[i] + s.series(VarKind::PEh)[i] +
           s.series(VarKind::PLeh)[i] - s.series(VarKind::PExp)[i];
}
}  // namespace detail

// Hourly demand-response potential of a DR schedule against a baseline:
// the absolute hourly power shift plus its horizon average.
inline DrReport dr_potential(const ScheduleSolution& baseline, const ScheduleSolution& dr,
                             NetPowerDef def = NetPowerDef::GridExchange) {
    if (baseline.status != SolveStatus::Optimal || dr.status != SolveStatus::Optimal) {
        throw ValidationError("dr_potential: both solutions must be optimal");
    }
    if (baseline.horizon != dr.horizon) {
        throw ValidationError("dr_potential: horizon mismatch (" + std::to_string(baseline.horizon) +
                              " vs " + std::to_string(dr.horizon) + ")");
    }
    if (baseline.scenario_id != dr.scenario_id) {
        throw ValidationError("dr_potential: solutions come from different scenarios");
    }
    DrReport r;
    r.delta_p_mw.reserve(static_cast<std::size_t>(baseline.horizon));
    for (int t = 1; t <= baseline.horizon; ++t) {
        r.delta_p_mw.push_back(
            std::abs(detail::plant_power_mw(dr, t, def) - detail::plant_power_mw(baseline, t, def)));
    }
    r.avg_delta_p_mw = std::accumulate(r.delta_p_mw.begin(), r.delta_p_mw.end(), 0.0) /
                       static_cast<double>(baseline.horizon);
    r.cost_per_ton_baseline = baseline.cost_per_ton_usd;
    r.cost_per_ton_dr = dr.cost_per_ton_usd;
    r.reduction_pct = 100.0 * (baseline.cost_per_ton_usd - dr.cost_per_ton_usd) /
                      baseline.cost_per_ton_usd;
    return r;
}

struct ComparisonRow {
    Mode mode;
    double cost_per_ton_usd = 0.0;
    double avg_dr_potential_mw = 0.0;
    double cost_reduction_pct = 0.0;
};

// Cross-scenario comparison table over the flexibility modes; the baseline
// row anchors the DR potential and the reduction percentages.
inline std::vector<ComparisonRow> compare_modes(const std::map<Mode, ScheduleSolution>& solutions,
                                                NetPowerDef def = NetPowerDef::GridExchange) {
    const auto base_it = solutions.find(Mode::Baseline);
    if (base_it == solutions.end()) throw ValidationError("compare_modes: baseline solution missing");
    const ScheduleSolution& base = base_it->second;
    std::vector<ComparisonRow> rows;
    for (const auto& [mode, sol] : solutions) {
        if (sol.status != SolveStatus::Optimal) {
            throw ValidationError(std::string("compare_modes: ") + mode_name(mode) + " is not optimal");
        }
        if (sol.scenario_id != base.scenario_id) {
            throw ValidationError(std::string("compare_modes: ") + mode_name(mode) +
                                  " was solved on a different scenario");
        }
        const DrReport r = dr_potential(base, sol, def);
        rows.push_back({mode, sol.cost_per_ton_usd, r.avg_delta_p_mw, r.reduction_pct});
    }
    return rows;
}

inline std::string render_comparison_text(const std::vector<ComparisonRow>& rows) {
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-12s %16s %18s %20s\n", "mode", "cost_per_ton_usd",
                  "avg_dr_potential_mw", "cost_reduction_pct");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-12s %16.2f %18.2f %20.2f\n", mode_name(r.mode),
                      r.cost_per_ton_usd, r.avg_dr_potential_mw, r.cost_reduction_pct);
        out += buf;
    }
    return out;
}

inline nlohmann::json dr_report_json(const DrReport& r) {
    nlohmann::json j;
    j["avg_delta_p_mw"] = r.avg_delta_p_mw;
    j["delta_p_mw"] = r.delta_p_mw;
    j["cost_per_ton_baseline_usd"] = r.cost_per_ton_baseline;
    j["cost_per_ton_dr_usd"] = r.cost_per_ton_dr;
    j["cost_reduction_pct"] = r.reduction_pct;
    return j;
}

}  // namespace h2dri

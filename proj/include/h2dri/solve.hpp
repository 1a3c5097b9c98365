#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "h2dri/csv.hpp"
#include "h2dri/engine.hpp"
#include "h2dri/linear_model.hpp"

namespace h2dri {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

// Solved hourly dispatch with objective, per-term cost breakdown and solver
// provenance. Dispatch vectors are 0-based over hours 1..T (states carry one
// extra trailing entry).
struct ScheduleSolution {
    SolveStatus status = SolveStatus::Infeasible;
    int horizon = 0;
    Mode mode = Mode::Baseline;
    double dri_order_t = 0.0;
    std::uint64_t scenario_id = 0;
    std::map<VarKind, std::vector<double>> dispatch;
    double objective_usd = 0.0;
    std::vector<std::pair<std::string, double>> cost_breakdown;
    double cost_per_ton_usd = 0.0;
    std::string engine;
    long lp_iterations = 0;
    int nodes = 0;
    std::string infeasibility_hint;

    const std::vector<double>& series(VarKind k) const {
        const auto it = dispatch.find(k);
        if (it == dispatch.end()) throw ValidationError("solution: missing dispatch family");
        return it->second;
    }

    // net power drawn from the grid at hour t (1-based)
    double net_exchange_mw(int t) const {
        return series(VarKind::PBuy)[static_cast<std::size_t>(t - 1)] -
               series(VarKind::PSell)[static_cast<std::size_t>(t - 1)];
    }
};

namespace detail {

inline void verify_solution(const ScheduleProblem& p, const std::vector<double>& x) {
    constexpr double kResidualTol = 1e-6;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < p.lb[j] - 1e-6 || x[j] > p.ub[j] + 1e-6) {
            throw EngineError("internal inconsistency: " + var_name(p.ref_of(static_cast<int>(j))) +
                              " = " + std::to_string(x[j]) + " violates its bounds");
        }
    }
    for (const auto& c : p.constraints) {
        double lhs = 0.0;
        for (const auto& [v, a] : c.terms) lhs += a * x[static_cast<std::size_t>(p.index_of(v))];
        const double r = lhs - c.rhs;
        const bool bad = (c.rel == Relation::Eq && std::abs(r) > kResidualTol) ||
                         (c.rel == Relation::Le && r > kResidualTol) ||
                         (c.rel == Relation::Ge && r < -kResidualTol);
        if (bad) {
            throw EngineError("internal inconsistency: constraint '" + c.tag + "' residual " +
                              std::to_string(r));
        }
    }
}

}  // namespace detail

// Runs the engine and returns a verified solution: every constraint residual
// is checked against the original data before Optimal is reported, binaries
// are exact, and the objective is recomputed from the dispatch (tie-break
// penalties excluded).
inline ScheduleSolution solve(const ScheduleProblem& p, const MilpEngine& engine) {
    p.validate();
    ScheduleSolution s;
    s.horizon = p.horizon;
    s.mode = p.mode;
    s.dri_order_t = p.dri_order_t;
    s.scenario_id = p.scenario_id;
    s.engine = engine.name();

    MilpResult r = engine.solve_problem(p);
    s.lp_iterations = r.lp_iterations;
    s.nodes = r.nodes;

    if (r.status == LpStatus::IterLimit) {
        throw EngineError("engine '" + engine.name() + "' exceeded its work limit");
    }
    if (r.status == LpStatus::Infeasible) {
        s.status = SolveStatus::Infeasible;
        if (r.most_violated_row >= 0 &&
            r.most_violated_row < static_cast<int>(p.constraints.size())) {
            s.infeasibility_hint = p.constraints[static_cast<std::size_t>(r.most_violated_row)].tag;
        }
        return s;
    }
    if (r.status == LpStatus::Unbounded) {
        s.status = SolveStatus::Unbounded;
        return s;
    }

    // snap binaries; the engine guarantees they are integral
    for (int t = 1; t <= p.horizon; ++t) {
        auto& v = r.x[static_cast<std::size_t>(p.index_of({VarKind::BGrid, t}))];
        if (std::abs(v - std::round(v)) > 1e-7) {
            throw EngineError("engine returned a fractional grid switch at hour " + std::to_string(t));
        }
        v = std::round(v);
    }
    detail::verify_solution(p, r.x);

    s.status = SolveStatus::Optimal;
    for (int k = 0; k < kNumVarKinds; ++k) {
        const auto kind = static_cast<VarKind>(k);
        std::vector<double> vals;
        vals.reserve(static_cast<std::size_t>(p.count_of(kind)));
        for (int t = 1; t <= p.count_of(kind); ++t) {
            vals.push_back(r.x[static_cast<std::size_t>(p.index_of({kind, t}))]);
        }
        s.dispatch[kind] = std::move(vals);
    }
    double total = 0.0;
    for (const auto& comp : p.cost_components) {
        double v = comp.constant;
        for (const auto& [ref, coef] : comp.terms) {
            v += coef * r.x[static_cast<std::size_t>(p.index_of(ref))];
        }
        s.cost_breakdown.push_back({comp.name, v});
        total += v;
    }
    s.objective_usd = total;
    s.cost_per_ton_usd = total / p.dri_order_t;
    return s;
}

// ---- exports ----

inline void write_dispatch_csv(const ScheduleSolution& s, const std::filesystem::path& path) {
    if (s.status != SolveStatus::Optimal) throw ValidationError("dispatch export needs an optimal solution");
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << "hour,P_AE,P_buy,P_sell,P_Eh,P_Leh,P_comp,P_exp,M_DRI_dis,M_DRI_QSS,HT,Lts,b_grid\n";
    char buf[64];
    for (int t = 1; t <= s.horizon; ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        out << t;
        for (const VarKind k :
             {VarKind::PAe, VarKind::PBuy, VarKind::PSell, VarKind::PEh, VarKind::PLeh,
              VarKind::PComp, VarKind::PExp, VarKind::MDriDis, VarKind::MDriQss, VarKind::Ht,
              VarKind::Lts}) {
            std::snprintf(buf, sizeof(buf), ",%.6f", s.series(k)[i]);
            out << buf;
        }
        out << "," << static_cast<int>(s.series(VarKind::BGrid)[i]) << "\n";
    }
    if (!out) throw ValidationError("write failed: " + path.string());
}

inline nlohmann::json solution_summary_json(const ScheduleSolution& s) {
    nlohmann::json j;
    j["status"] = status_name(s.status);
    j["mode"] = mode_name(s.mode);
    j["horizon_hours"] = s.horizon;
    j["dri_order_t"] = s.dri_order_t;
    j["engine"] = s.engine;
    if (s.status == SolveStatus::Optimal) {
        j["objective_usd"] = s.objective_usd;
        j["cost_per_ton_usd"] = s.cost_per_ton_usd;
        nlohmann::json b = nlohmann::json::object();
        for (const auto& [name, v] : s.cost_breakdown) b[name] = v;
        j["cost_breakdown_usd"] = b;
        j["ht_start_t"] = s.series(VarKind::Ht).front();
        j["ht_end_t"] = s.series(VarKind::Ht).back();
    }
    if (!s.infeasibility_hint.empty()) j["infeasibility_hint"] = s.infeasibility_hint;
    return j;
}

inline void write_summary_json(const ScheduleSolution& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << solution_summary_json(s).dump(2) << "\n";
}

}  // namespace h2dri

#pragma once

#include <cmath>

#include "h2dri/problem_builder.hpp"
#include "h2dri/solve.hpp"

namespace h2dri {

// Verification oracle for small horizons: enumerate every assignment of the
// grid switches and solve the remaining pure LP for each, keeping the best.
// Independent of the branch and bound search path; must agree with solve()
// to 1e-6 relative on any scenario it can handle.
inline ScheduleSolution brute_force_oracle(const ScenarioConfig& cfg) {
    if (cfg.horizon_t > 4) {
        throw ValidationError("brute_force_oracle: horizon " + std::to_string(cfg.horizon_t) +
                              " exceeds the enumeration limit of 4");
    }
    const ScheduleProblem p = build_problem(cfg);
    const LpModel base = to_lp(p);

    ScheduleSolution s;
    s.horizon = p.horizon;
    s.mode = p.mode;
    s.dri_order_t = p.dri_order_t;
    s.scenario_id = p.scenario_id;
    s.engine = "oracle";

    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    int root_hint = -1;
    const int T = cfg.horizon_t;
    for (unsigned mask = 0; mask < (1u << T); ++mask) {
        LpModel lp = base;
        for (int t = 1; t <= T; ++t) {
            const auto j = static_cast<std::size_t>(p.index_of({VarKind::BGrid, t}));
            const double v = (mask >> (t - 1)) & 1u ? 1.0 : 0.0;
            lp.lb[j] = v;
            lp.ub[j] = v;
        }
        const LpResult r = solve_lp(lp);
        s.lp_iterations += r.iterations;
        ++s.nodes;
        if (r.status == LpStatus::IterLimit) throw EngineError("oracle: LP work limit exceeded");
        if (r.status == LpStatus::Unbounded) {
            s.status = SolveStatus::Unbounded;
            return s;
        }
        if (r.status == LpStatus::Infeasible) {
            if (mask == 0) root_hint = r.most_violated_row;
            continue;
        }
        if (r.objective < best_obj) {
            best_obj = r.objective;
            best_x = r.x;
        }
    }

    if (best_x.empty()) {
        s.status = SolveStatus::Infeasible;
        if (root_hint >= 0 && root_hint < static_cast<int>(p.constraints.size())) {
            s.infeasibility_hint = p.constraints[static_cast<std::size_t>(root_hint)].tag;
        }
        return s;
    }

    detail::verify_solution(p, best_x);
    s.status = SolveStatus::Optimal;
    for (int k = 0; k < kNumVarKinds; ++k) {
        const auto kind = static_cast<VarKind>(k);
        std::vector<double> vals;
        for (int t = 1; t <= p.count_of(kind); ++t) {
            vals.push_back(best_x[static_cast<std::size_t>(p.index_of({kind, t}))]);
        }
        s.dispatch[kind] = std::move(vals);
    }
    double total = 0.0;
    for (const auto& comp : p.cost_components) {
        double v = comp.constant;
        for (const auto& [ref, coef] : comp.terms) {
            v += coef * best_x[static_cast<std::size_t>(p.index_of(ref))];
        }
        s.cost_breakdown.push_back({comp.name, v});
        total += v;
    }
    s.objective_usd = total;
    s.cost_per_ton_usd = total / p.dri_order_t;
    return s;
}

}  // namespace h2dri

#pragma once

#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "h2dri/linear_model.hpp"
#include "h2dri/simplex.hpp"

namespace h2dri {

inline LpModel to_lp(const ScheduleProblem& p) {
    LpModel m;
    m.lb = p.lb;
    m.ub = p.ub;
    m.c = p.objective_vector().first;
    m.rows.reserve(p.constraints.size());
    for (const auto& c : p.constraints) {
        LpRow row;
        row.rel = c.rel;
        row.rhs = c.rhs;
        row.terms.reserve(c.terms.size());
        for (const auto& [v, a] : c.terms) row.terms.push_back({p.index_of(v), a});
        m.rows.push_back(std::move(row));
    }
    return m;
}

struct MilpResult {
    LpStatus status = LpStatus::IterLimit;
    std::vector<double> x;
    double objective = 0.0;  // includes tie-break penalties, excludes the objective constant
    long lp_iterations = 0;
    int nodes = 0;
    int most_violated_row = -1;
};

// Narrow contract an optimization engine must satisfy: proven-optimal MILP
// solutions, deterministic for identical input.
class MilpEngine {
public:
    virtual ~MilpEngine() = default;
    virtual std::string name() const = 0;
    virtual MilpResult solve_problem(const ScheduleProblem& p) const = 0;
};

// Exact branch and bound over the grid switches on top of the bounded
// simplex. The LP relaxation is solved per node; candidates whose binaries
// are integral only to tolerance are re-solved with the binaries pinned, so
// every incumbent is a clean mixed-integer vertex.
class BranchAndBoundEngine final : public MilpEngine {
public:
    std::string name() const override { return "bnb"; }

    MilpResult solve_problem(const ScheduleProblem& p) const override {
        const LpModel base = to_lp(p);
        std::vector<int> bins;
        for (int t = 1; t <= p.horizon; ++t) bins.push_back(p.index_of({VarKind::BGrid, t}));

        MilpResult out;
        double best_obj = std::numeric_limits<double>::infinity();
        std::vector<double> best_x;
        bool have_incumbent = false;

        struct Node {
            std::vector<std::pair<int, double>> fixes;
        };
        std::vector<Node> stack;
        stack.push_back({});
        constexpr int kNodeCap = 100000;

        while (!stack.empty()) {
            if (out.nodes >= kNodeCap) {
                out.status = LpStatus::IterLimit;
                return out;
            }
            const Node node = std::move(stack.back());
            stack.pop_back();
            ++out.nodes;

            LpModel lp = base;
            for (const auto& [j, v] : node.fixes) {
                lp.lb[static_cast<std::size_t>(j)] = v;
                lp.ub[static_cast<std::size_t>(j)] = v;
            }
            const LpResult rel = solve_lp(lp);
            out.lp_iterations += rel.iterations;
            if (rel.status == LpStatus::IterLimit) {
                out.status = LpStatus::IterLimit;
                return out;
            }
            if (rel.status == LpStatus::Infeasible) {
                if (node.fixes.empty()) out.most_violated_row = rel.most_violated_row;
                continue;
            }
            if (rel.status == LpStatus::Unbounded) {
                out.status = LpStatus::Unbounded;
                return out;
            }
            const double prune_tol = 1e-9 * (1.0 + std::abs(best_obj));
            if (have_incumbent && rel.objective >= best_obj - prune_tol) continue;

            double worst_int_dev = 0.0;
            for (const int j : bins) {
                const double v = rel.x[static_cast<std::size_t>(j)];
                worst_int_dev = std::max(worst_int_dev, std::abs(v - std::round(v)));
            }
            if (worst_int_dev <= 1e-11) {
                // exactly integral: the relaxation point is MILP-feasible
                if (rel.objective < best_obj) {
                    best_obj = rel.objective;
                    best_x = rel.x;
                    have_incumbent = true;
                }
                continue;
            }

            // Repair: a switch is free whenever one exchange direction is
            // zero, so set it from the traded side and re-solve once. When
            // the repaired value matches the relaxation bound the subtree is
            // solved without branching (the common case: exclusivity is
            // already cost-optimal, only the switch value was left
            // fractional at the vertex).
            {
                LpModel fixed = lp;
                for (int t = 1; t <= p.horizon; ++t) {
                    const auto j = static_cast<std::size_t>(bins[static_cast<std::size_t>(t - 1)]);
                    if (lp.lb[j] == lp.ub[j]) continue;  // already fixed on this branch
                    const double sell = rel.x[static_cast<std::size_t>(p.index_of({VarKind::PSell, t}))];
                    const double buy = rel.x[static_cast<std::size_t>(p.index_of({VarKind::PBuy, t}))];
                    double v;
                    if (sell > 1e-7) {
                        v = 1.0;
                    } else if (buy > 1e-7) {
                        v = 0.0;
                    } else {
                        v = std::round(rel.x[j]) >= 1.0 ? 1.0 : 0.0;
                    }
                    fixed.lb[j] = v;
                    fixed.ub[j] = v;
                }
                const LpResult rr = solve_lp(fixed);
                out.lp_iterations += rr.iterations;
                if (rr.status == LpStatus::Optimal && rr.objective < best_obj) {
                    best_obj = rr.objective;
                    best_x = rr.x;
                    have_incumbent = true;
                }
                if (rr.status == LpStatus::Optimal &&
                    rr.objective <= rel.objective + 1e-9 * (1.0 + std::abs(rel.objective))) {
                    continue;
                }
            }

            // branch on the most fractional switch
            int branch_var = -1;
            double branch_frac = -1.0;
            for (const int j : bins) {
                const double v = rel.x[static_cast<std::size_t>(j)];
                if (std::abs(v - std::round(v)) <= 1e-11) continue;
                const double frac = 0.5 - std::abs(v - 0.5);  // larger = closer to 0.5
                if (frac > branch_frac + 1e-15) {
                    branch_frac = frac;
                    branch_var = j;
                }
            }
            if (branch_var < 0) continue;  // integral after all; incumbent already captured

            // depth-first; try the side the relaxation leans toward first
            const double v = rel.x[static_cast<std::size_t>(branch_var)];
            const double first = v >= 0.5 ? 1.0 : 0.0;
            Node other = node;
            other.fixes.push_back({branch_var, 1.0 - first});
            Node preferred = node;
            preferred.fixes.push_back({branch_var, first});
            stack.push_back(std::move(other));
            stack.push_back(std::move(preferred));
        }

        if (!have_incumbent) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        out.status = LpStatus::Optimal;
        out.x = std::move(best_x);
        out.objective = best_obj;
        return out;
    }
};

inline std::unique_ptr<MilpEngine> make_engine(const std::string& name) {
    if (name == "bnb") return std::make_unique<BranchAndBoundEngine>();
    throw EngineError("unknown engine '" + name + "' (available: bnb)");
}

// Engine choice via environment, H2DRI_ENGINE; defaults to the built-in
// branch and bound.
inline std::unique_ptr<MilpEngine> engine_from_env() {
    const char* e = std::getenv("H2DRI_ENGINE");
    return make_engine(e && *e ? e : "bnb");
}

}  // namespace h2dri

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "h2dri/errors.hpp"
#include "h2dri/scenario.hpp"

namespace h2dri {

// Decision-variable families. Storage states (Ht, Lts) carry indices
// 1..T+1; every other family carries 1..T. BGrid is the only binary family.
enum class VarKind : int {
    PAe,      // electrolyzer power, MW
    PBuy,     // grid purchase, MW
    PSell,    // grid sale, MW
    PEh,      // high-temperature heater power, MW
    PLeh,     // low-temperature heater power, MW
    PComp,    // compressor power, MW
    PExp,     // expander power, MW
    MH2In,    // hydrogen production into storage, t/h
    MH2Out,   // hydrogen drawn from storage, t/h
    MlSell,   // hydrogen sold, t/h
    Ht,       // hydrogen storage level at period start, t
    Lts,      // low-temperature thermal store level, MWh
    MDriQss,  // furnace quasi-steady setpoint, t/h
    MDriDis,  // realized furnace discharge, t/h
    BGrid,    // 1 = selling allowed, 0 = buying allowed
};

inline constexpr int kNumVarKinds = 15;

inline const char* var_kind_name(VarKind k) {
    static constexpr std::array<const char*, kNumVarKinds> names = {
        "P_AE",  "P_buy", "P_sell", "P_Eh", "P_Leh",     "P_comp",    "P_exp", "M_H2_in",
        "M_H2_out", "Ml_sell", "HT",   "Lts",  "M_DRI_QSS", "M_DRI_dis", "b_grid"};
    return names[static_cast<int>(k)];
}

inline bool var_kind_is_state(VarKind k) { return k == VarKind::Ht || k == VarKind::Lts; }

struct VarRef {
    VarKind kind;
    int t;  // 1..T, or 1..T+1 for storage states

    bool operator==(const VarRef&) const = default;
};

inline std::string var_name(VarRef v) {
    return std::string(var_kind_name(v.kind)) + "_" + std::to_string(v.t);
}

enum class Relation { Le, Eq, Ge };

inline const char* relation_text(Relation r) {
    switch (r) {
        case Relation::Le: return "<=";
        case Relation::Eq: return "=";
        case Relation::Ge: return ">=";
    }
    return "?";
}

struct LinearConstraint {
    std::vector<std::pair<VarRef, double>> terms;
    Relation rel = Relation::Eq;
    double rhs = 0.0;
    std::string tag;  // row name for dumps and infeasibility hints
};

// A named slice of the objective, kept separate so solved schedules can
// report a per-term cost breakdown.
struct CostComponent {
    std::string name;
    std::vector<std::pair<VarRef, double>> terms;
    double constant = 0.0;
};

// The assembled optimization: variable bounds, linear constraints and a
// minimization objective over the families above.
struct ScheduleProblem {
    int horizon = 0;
    Mode mode = Mode::Baseline;
    double dri_order_t = 0.0;
    std::uint64_t scenario_id = 0;

    std::vector<double> lb, ub;       // per variable index
    std::vector<LinearConstraint> constraints;
    // deque: cost() hands out references that must survive later insertions
    std::deque<CostComponent> cost_components;      // sum of these is the objective
    std::vector<std::pair<VarRef, double>> tiebreak;  // tiny penalties, excluded from reporting

    int count_of(VarKind k) const { return var_kind_is_state(k) ? horizon + 1 : horizon; }

    int num_vars() const { return kNumVarKinds * horizon + 2; }  // two state families add one slot each

    int index_of(VarRef v) const {
        const int k = static_cast<int>(v.kind);
        int off = 0;
        for (int i = 0; i < k; ++i) off += count_of(static_cast<VarKind>(i));
        const int cnt = count_of(v.kind);
        if (v.t < 1 || v.t > cnt) {
            throw ValidationError("variable " + var_name(v) + " outside horizon 1.." + std::to_string(cnt));
        }
        return off + (v.t - 1);
    }

    VarRef ref_of(int index) const {
        for (int k = 0; k < kNumVarKinds; ++k) {
            const int cnt = count_of(static_cast<VarKind>(k));
            if (index < cnt) return {static_cast<VarKind>(k), index + 1};
            index -= cnt;
        }
        throw ValidationError("variable index out of range");
    }

    bool is_binary(VarRef v) const { return v.kind == VarKind::BGrid; }

    void init_vars() {
        lb.assign(static_cast<std::size_t>(num_vars()), 0.0);
        ub.assign(static_cast<std::size_t>(num_vars()), std::numeric_limits<double>::infinity());
    }

    void set_bounds(VarRef v, double lo, double hi) {
        const auto i = static_cast<std::size_t>(index_of(v));
        lb[i] = lo;
        ub[i] = hi;
    }

    void add(LinearConstraint c) { constraints.push_back(std::move(c)); }

    CostComponent& cost(const std::string& name) {
        for (auto& c : cost_components) {
            if (c.name == name) return c;
        }
        cost_components.push_back({name, {}, 0.0});
        return cost_components.back();
    }

    // Flattened objective: coefficient per variable index plus a constant.
    std::pair<std::vector<double>, double> objective_vector() const {
        std::vector<double> c(static_cast<std::size_t>(num_vars()), 0.0);
        double constant = 0.0;
        for (const auto& comp : cost_components) {
            constant += comp.constant;
            for (const auto& [v, coef] : comp.terms) c[static_cast<std::size_t>(index_of(v))] += coef;
        }
        for (const auto& [v, coef] : tiebreak) c[static_cast<std::size_t>(index_of(v))] += coef;
        return {std::move(c), constant};
    }

    // Structural checks: every reference in range, finite coefficients,
    // binaries only in the BGrid family.
    void validate() const {
        if (horizon < 1) throw ValidationError("problem: horizon must be at least 1");
        if (lb.size() != static_cast<std::size_t>(num_vars()) || ub.size() != lb.size()) {
            throw ValidationError("problem: variable table not initialized");
        }
        for (std::size_t i = 0; i < lb.size(); ++i) {
            if (lb[i] > ub[i] + 1e-12) {
                throw ValidationError("problem: empty bound interval on " +
                                      var_name(ref_of(static_cast<int>(i))));
            }
        }
        for (const auto& c : constraints) {
            if (c.terms.empty()) throw ValidationError("constraint '" + c.tag + "' has no terms");
            for (const auto& [v, coef] : c.terms) {
                (void)index_of(v);  // throws when out of range
                if (!std::isfinite(coef)) {
                    throw ValidationError("constraint '" + c.tag + "': non-finite coefficient on " + var_name(v));
                }
            }
            if (!std::isfinite(c.rhs)) throw ValidationError("constraint '" + c.tag + "': non-finite rhs");
        }
        for (const auto& comp : cost_components) {
            for (const auto& [v, coef] : comp.terms) {
                (void)index_of(v);
                if (!std::isfinite(coef)) {
                    throw ValidationError("cost '" + comp.name + "': non-finite coefficient");
                }
            }
        }
    }

    // LP-style text dump for external inspection.
    std::string lp_text() const {
        std::ostringstream os;
        os << "\\ " << mode_name(mode) << " schedule, T=" << horizon << "\n";
        os << "Minimize\n obj:";
        const auto [c, constant] = objective_vector();
        bool first = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0.0) continue;
            os << (c[i] < 0 ? " - " : (first ? " " : " + ")) << std::abs(c[i]) << " "
               << var_name(ref_of(static_cast<int>(i)));
            first = false;
        }
        if (constant != 0.0) os << (constant < 0 ? " - " : " + ") << std::abs(constant);
        os << "\nSubject To\n";
        for (std::size_t r = 0; r < constraints.size(); ++r) {
            const auto& row = constraints[r];
            os << " " << (row.tag.empty() ? "c" + std::to_string(r + 1) : row.tag) << ":";
            for (std::size_t i = 0; i < row.terms.size(); ++i) {
                const auto& [v, coef] = row.terms[i];
                os << (coef < 0 ? " - " : (i == 0 ? " " : " + ")) << std::abs(coef) << " " << var_name(v);
            }
            os << " " << relation_text(row.rel) << " " << row.rhs << "\n";
        }
        os << "Bounds\n";
        for (std::size_t i = 0; i < lb.size(); ++i) {
            const VarRef v = ref_of(static_cast<int>(i));
            if (is_binary(v)) continue;
            os << " " << lb[i] << " <= " << var_name(v) << " <= " << ub[i] << "\n";
        }
        os << "Binaries\n";
        for (int t = 1; t <= horizon; ++t) os << " " << var_name({VarKind::BGrid, t});
        os << "\nEnd\n";
        return os.str();
    }
};

}  // namespace h2dri

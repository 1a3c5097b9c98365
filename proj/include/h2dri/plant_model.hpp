#pragma once

#include <string>

#include "h2dri/linear_model.hpp"
#include "h2dri/scenario.hpp"

// Constraint generators for every plant component except the shaft furnace
// dynamics (those live in the problem builder, where the scheduling mode
// decides their shape). Each function appends rows and its cost terms to a
// ScheduleProblem whose variables were declared by declare_variables().

namespace h2dri {

inline void declare_variables(const ScenarioConfig& cfg, ScheduleProblem& p) {
    const auto& pl = cfg.plant;
    const auto& sf = cfg.sf;
    p.horizon = cfg.horizon_t;
    p.mode = cfg.mode;
    p.dri_order_t = cfg.dri_order_t;
    p.scenario_id = cfg.scenario_id();
    p.init_vars();
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.set_bounds({VarKind::PAe, t}, pl.ae_min_mw(), pl.ae_max_mw());
        p.set_bounds({VarKind::PBuy, t}, 0.0, pl.big_m_mw);
        p.set_bounds({VarKind::PSell, t}, 0.0, pl.big_m_mw);
        p.set_bounds({VarKind::PEh, t}, 0.0, inf);
        p.set_bounds({VarKind::PLeh, t}, 0.0, pl.leh_cap_mw);
        p.set_bounds({VarKind::PComp, t}, 0.0, inf);
        p.set_bounds({VarKind::PExp, t}, 0.0, pl.exp_coeff_mwh_per_t * pl.exp_flow_cap_tph);
        p.set_bounds({VarKind::MH2In, t}, 0.0, inf);
        p.set_bounds({VarKind::MH2Out, t}, 0.0, inf);
        p.set_bounds({VarKind::MlSell, t}, 0.0, inf);
        p.set_bounds({VarKind::MDriQss, t}, sf.m_min_tph, sf.m_max_tph);
        p.set_bounds({VarKind::MDriDis, t}, sf.m_min_tph, sf.m_max_tph);
        p.set_bounds({VarKind::BGrid, t}, 0.0, 1.0);
    }
    for (int t = 1; t <= cfg.horizon_t + 1; ++t) {
        p.set_bounds({VarKind::Ht, t}, pl.ht_min_t, pl.ht_max_t);
        p.set_bounds({VarKind::Lts, t}, 0.0, inf);
    }
    // cyclic hydrogen storage pinned at half capacity
    p.set_bounds({VarKind::Ht, 1}, 0.5 * pl.ht_cap_t, 0.5 * pl.ht_cap_t);
    p.set_bounds({VarKind::Ht, cfg.horizon_t + 1}, 0.5 * pl.ht_cap_t, 0.5 * pl.ht_cap_t);
}

// Electrolyzer: power proportional to hydrogen output, aggregate stack
// bounds via the variable table, O&M cost on power. Its waste-heat credit
// appears in the low-temperature store balance below.
inline void ae_constraints(const ScenarioConfig& cfg, ScheduleProblem& p) {
    auto& cost = p.cost("electrolyzer");
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.add({{{{VarKind::PAe, t}, 1.0}, {{VarKind::MH2In, t}, -cfg.plant.kappa_h2_mwh_per_t}},
               Relation::Eq,
               0.0,
               "ae_link_" + std::to_string(t)});
        cost.terms.push_back({{VarKind::PAe, t}, cfg.plant.cost_ae_usd_per_mwh * cfg.sf.dt_h});
    }
}

// Hydrogen storage: level recursion, outflow split into furnace demand,
// contracted sales and expander throughput, and the handling fee charged on
// both directions. Expander hydrogen flow is P_exp / exp_coeff.
inline void hydrogen_storage_constraints(const ScenarioConfig& cfg, ScheduleProblem& p) {
    const double dt = cfg.sf.dt_h;
    auto& cost = p.cost("h2_storage");
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.add({{{{VarKind::Ht, t + 1}, 1.0},
                {{VarKind::Ht, t}, -1.0},
                {{VarKind::MH2In, t}, -dt},
                {{VarKind::MH2Out, t}, dt}},
               Relation::Eq,
               0.0,
               "ht_balance_" + std::to_string(t)});
        p.add({{{{VarKind::MH2Out, t}, 1.0},
                {{VarKind::MDriDis, t}, -cfg.sf.phi_h2},
                {{VarKind::MlSell, t}, -1.0},
                {{VarKind::PExp, t}, -1.0 / cfg.plant.exp_coeff_mwh_per_t}},
               Relation::Eq,
               0.0,
               "h2_out_split_" + std::to_string(t)});
        p.add({{{{VarKind::MlSell, t}, 1.0}},
               Relation::Eq,
               cfg.h2_request.at_hour(t),
               "h2_sales_" + std::to_string(t)});
        cost.terms.push_back({{VarKind::MH2In, t}, 2.0 * cfg.plant.cost_hs_usd_per_t * dt});
    }
}

// High-temperature heater pinned by the heat-led balance (reaction heat net
// of top-gas and boiler recovery), and the low-temperature store fed by AE
// waste heat, compression heat and the LT heater. Its discharge serves
// expander preheating and is not otherwise constrained, so the balance is an
// inequality whose slack is the (efficiency-scaled) discharge.
inline void heater_and_thermal_constraints(const ScenarioConfig& cfg, ScheduleProblem& p) {
    const auto& pl = cfg.plant;
    const double dt = cfg.sf.dt_h;
    auto& eh_cost = p.cost("ht_heater");
    auto& leh_cost = p.cost("lt_heater");
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.add({{{{VarKind::PEh, t}, dt}, {{VarKind::MDriDis, t}, -pl.eh_net_coeff_mwh_per_t() * dt}},
               Relation::Eq,
               0.0,
               "heat_led_" + std::to_string(t)});
        const double in_coeff = pl.gamma_in * dt * (pl.gamma_h2_mwh_per_t + pl.comp_coeff_mwh_per_t);
        p.add({{{{VarKind::Lts, t + 1}, 1.0},
                {{VarKind::Lts, t}, -1.0},
                {{VarKind::MH2In, t}, -in_coeff},
                {{VarKind::PLeh, t}, -pl.gamma_in * dt}},
               Relation::Le,
               0.0,
               "lts_balance_" + std::to_string(t)});
        eh_cost.terms.push_back({{VarKind::PEh, t}, pl.cost_eh_usd_per_mwh * dt});
        leh_cost.terms.push_back({{VarKind::PLeh, t}, pl.cost_leh_usd_per_mwh * dt});
    }
    p.add({{{{VarKind::Lts, 1}, 1.0}, {{VarKind::Lts, cfg.horizon_t + 1}, -1.0}},
           Relation::Eq,
           0.0,
           "lts_cyclic"});
}

// Purchase/sale exclusivity through the big-M switch.
inline void grid_constraints(const ScenarioConfig& cfg, ScheduleProblem& p) {
    const double M = cfg.plant.big_m_mw;
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.add({{{{VarKind::PSell, t}, 1.0}, {{VarKind::BGrid, t}, -M}},
               Relation::Le,
               0.0,
               "sell_switch_" + std::to_string(t)});
        p.add({{{{VarKind::PBuy, t}, 1.0}, {{VarKind::BGrid, t}, M}},
               Relation::Le,
               M,
               "buy_switch_" + std::to_string(t)});
    }
}

// Hourly electric balance: wind + pv + purchase + expander output covers
// sales plus all plant loads. Compressor power rides on hydrogen production.
inline void power_balance(const ScenarioConfig& cfg, ScheduleProblem& p) {
    auto& cost = p.cost("comp_exp");
    for (int t = 1; t <= cfg.horizon_t; ++t) {
        p.add({{{{VarKind::PComp, t}, 1.0}, {{VarKind::MH2In, t}, -cfg.plant.comp_coeff_mwh_per_t}},
               Relation::Eq,
               0.0,
               "comp_link_" + std::to_string(t)});
        p.add({{{{VarKind::PBuy, t}, 1.0},
                {{VarKind::PExp, t}, 1.0},
                {{VarKind::PSell, t}, -1.0},
                {{VarKind::PAe, t}, -1.0},
                {{VarKind::PComp, t}, -1.0},
                {{VarKind::PEh, t}, -1.0},
                {{VarKind::PLeh, t}, -1.0}},
               Relation::Eq,
               -(cfg.wind.at_hour(t) + cfg.pv.at_hour(t)),
               "power_balance_" + std::to_string(t)});
        cost.terms.push_back({{VarKind::PComp, t}, cfg.plant.cost_coxp_usd_per_mwh * cfg.sf.dt_h});
        cost.terms.push_back({{VarKind::PExp, t}, cfg.plant.cost_coxp_usd_per_mwh * cfg.sf.dt_h});
    }
}

}  // namespace h2dri

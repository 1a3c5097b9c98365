#pragma once

#include <string>

#include "h2dri/plant_model.hpp"

namespace h2dri {

// Assembles the full optimization for the chosen flexibility mode.
//
// Common parts: component constraints, the order-fulfillment row and the
// operating-cost objective. Mode differences:
//   Baseline  - furnace discharge and electrolyzer power each held constant
//               across the horizon (the constants stay free variables; the
//               order row and the cyclic storage pin decide their values),
//   AeFlex    - electrolyzer freed inside its stack bounds, furnace constant,
//   AeSfFlex  - furnace setpoints freed as well, coupled to the realized
//               discharge by the fixed-lag transition rows plus ramp limits.
inline ScheduleProblem build_problem(const ScenarioConfig& cfg) {
    cfg.plant.validate();
    cfg.sf.validate();
    if (cfg.plant.big_m_mw <= 0.0) {
        throw ValidationError("build_problem: big_m_mw not materialized");
    }

    ScheduleProblem p;
    declare_variables(cfg, p);
    ae_constraints(cfg, p);
    hydrogen_storage_constraints(cfg, p);
    heater_and_thermal_constraints(cfg, p);
    grid_constraints(cfg, p);
    power_balance(cfg, p);

    const int T = cfg.horizon_t;
    const double dt = cfg.sf.dt_h;

    {
        LinearConstraint order;
        for (int t = 1; t <= T; ++t) order.terms.push_back({{VarKind::MDriDis, t}, dt});
        order.rel = Relation::Eq;
        order.rhs = cfg.dri_order_t;
        order.tag = "order_total";
        p.add(std::move(order));
    }

    if (cfg.mode == Mode::AeSfFlex) {
        const double beta = cfg.sf.beta();
        p.add({{{{VarKind::MDriDis, 1}, 1.0}, {{VarKind::MDriQss, 1}, -1.0}},
               Relation::Eq, 0.0, "sf_transition_1"});
        for (int t = 1; t < T; ++t) {
            p.add({{{{VarKind::MDriDis, t + 1}, 1.0},
                    {{VarKind::MDriQss, t}, -beta},
                    {{VarKind::MDriQss, t + 1}, -(1.0 - beta)}},
                   Relation::Eq, 0.0, "sf_transition_" + std::to_string(t + 1)});
            p.add({{{{VarKind::MDriQss, t + 1}, 1.0}, {{VarKind::MDriQss, t}, -1.0}},
                   Relation::Le, cfg.sf.ramp_up_tph, "sf_ramp_up_" + std::to_string(t)});
            p.add({{{{VarKind::MDriQss, t + 1}, 1.0}, {{VarKind::MDriQss, t}, -1.0}},
                   Relation::Ge, cfg.sf.ramp_dn_tph, "sf_ramp_dn_" + std::to_string(t)});
        }
    } else {
        // constant furnace: every setpoint equals the realized discharge
        for (int t = 1; t <= T; ++t) {
            p.add({{{{VarKind::MDriQss, t}, 1.0}, {{VarKind::MDriDis, t}, -1.0}},
                   Relation::Eq, 0.0, "qss_tracks_dis_" + std::to_string(t)});
        }
        for (int t = 2; t <= T; ++t) {
            p.add({{{{VarKind::MDriDis, t}, 1.0}, {{VarKind::MDriDis, 1}, -1.0}},
                   Relation::Eq, 0.0, "sf_constant_" + std::to_string(t)});
        }
    }
    if (cfg.mode == Mode::Baseline) {
        for (int t = 2; t <= T; ++t) {
            p.add({{{{VarKind::PAe, t}, 1.0}, {{VarKind::PAe, 1}, -1.0}},
                   Relation::Eq, 0.0, "ae_constant_" + std::to_string(t)});
        }
    }

    // objective
    auto& res_om = p.cost("res_om");
    for (int t = 1; t <= T; ++t) {
        res_om.constant += (cfg.plant.cost_pv_usd_per_mwh * cfg.pv.at_hour(t) +
                            cfg.plant.cost_wind_usd_per_mwh * cfg.wind.at_hour(t)) * dt;
    }
    auto& ore = p.cost("ore_and_furnace");
    auto& buy = p.cost("grid_purchase");
    auto& tax = p.cost("carbon_tax");
    auto& sale = p.cost("grid_sale_revenue");
    auto& h2rev = p.cost("h2_sales_revenue");
    const double tax_coeff = cfg.plant.phi_ec_t_per_mwh * cfg.plant.carbon_tax_usd_per_t;
    for (int t = 1; t <= T; ++t) {
        ore.terms.push_back(
            {{VarKind::MDriDis, t}, (cfg.plant.cost_ore_usd_per_t + cfg.plant.cost_sf_usd_per_t) * dt});
        buy.terms.push_back({{VarKind::PBuy, t}, cfg.prices_buy.at_hour(t) * dt});
        tax.terms.push_back({{VarKind::PBuy, t}, tax_coeff * dt});
        sale.terms.push_back({{VarKind::PSell, t}, -cfg.prices_sell.at_hour(t) * dt});
        h2rev.terms.push_back({{VarKind::MlSell, t}, -cfg.plant.h2_price_usd_per_t * dt});
    }

    // removable lexicographic tie-break: prefer the smallest grid exchange
    // among equal-cost optima
    for (int t = 1; t <= T; ++t) {
        p.tiebreak.push_back({{VarKind::PBuy, t}, 1e-9});
        p.tiebreak.push_back({{VarKind::PSell, t}, 1e-9});
    }

    p.validate();
    return p;
}

}  // namespace h2dri

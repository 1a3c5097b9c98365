#pragma once

#include <cmath>
#include <string>

#include "h2dri/errors.hpp"

namespace h2dri {

// Technical parameters and unit costs of all plant components except the
// shaft furnace dynamics (see SfFlexParams). Every value can be overridden
// from the scenario config.
struct PlantParams {
    // hydrogen chain
    double phi_h2 = 25.29 / 150.0;        // t H2 consumed per t DRI
    double gamma_h2_mwh_per_t = 5.0;      // recoverable AE waste heat, MWh per t H2
    double kappa_h2_mwh_per_t = 52.0;     // AE electricity demand, MWh per t H2
    double ae_single_min_mw = 5.0;        // per-stack lower bound
    double ae_single_max_mw = 60.0;       // per-stack upper bound
    int n_ae = 12;                        // number of identical stacks

    // hydrogen storage tank, tonnes
    double ht_min_t = 20.0;
    double ht_max_t = 200.0;
    double ht_cap_t = 200.0;              // nameplate; cyclic state pinned at 50% of this

    // heaters and thermal storage
    double phi_eh = 0.95;                 // high-temperature heater efficiency
    double gamma_in = 0.9;                // thermal store charge efficiency
    double gamma_out = 0.9;               // thermal store discharge efficiency
    double leh_cap_mw = 50.0;             // low-temperature electric heater cap

    // compressor / expander, MWh per t H2 throughput
    double comp_coeff_mwh_per_t = 3.0;
    double exp_coeff_mwh_per_t = 2.0;
    double exp_flow_cap_tph = 0.0;        // expander hydrogen throughput cap; 0 disables it

    // heat flows tied to DRI discharge, MWh per t DRI
    double ftg_coeff_mwh_per_t = 0.05;    // furnace top gas recovery
    double whb_coeff_mwh_per_t = 0.05;    // waste heat boiler recovery
    double sf_heat_coeff_mwh_per_t = 0.35;  // reaction heat carried by the reducing gas

    // unit costs
    double cost_pv_usd_per_mwh = 30.0;      // C^S
    double cost_wind_usd_per_mwh = 25.0;    // C^W
    double cost_ore_usd_per_t = 180.0 / 1.4;
    double cost_sf_usd_per_t = 33.56;
    double cost_ae_usd_per_mwh = 13.65;
    double cost_eh_usd_per_mwh = 34.83;
    double cost_coxp_usd_per_mwh = 8.0;
    double cost_hs_usd_per_t = 6.0;         // charged twice: in and out
    double cost_leh_usd_per_mwh = 4.86;
    double carbon_tax_usd_per_t = 40.0;
    double phi_ec_t_per_mwh = 0.57;         // grid electricity carbon intensity
    double h2_price_usd_per_t = 6500.0;

    // big-M for the buy/sell exclusivity switch; 0 means "derive from capacities"
    double big_m_mw = 0.0;

    double ae_min_mw() const { return n_ae * ae_single_min_mw; }
    double ae_max_mw() const { return n_ae * ae_single_max_mw; }
    double h2_in_max_tph() const { return ae_max_mw() / kappa_h2_mwh_per_t; }

    // net heat the high-temperature heater must supply per t DRI
    double eh_net_coeff_mwh_per_t() const {
        return sf_heat_coeff_mwh_per_t - ftg_coeff_mwh_per_t - whb_coeff_mwh_per_t;
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ValidationError(std::string("plant.") + name + ": must be strictly positive");
            }
        };
        auto frac = [](double v, const char* name) {
            if (!(v > 0.0 && v <= 1.0)) {
                throw ValidationError(std::string("plant.") + name + ": must lie in (0, 1]");
            }
        };
        positive(phi_h2, "phi_h2");
        positive(kappa_h2_mwh_per_t, "kappa_h2_mwh_per_t");
        positive(gamma_h2_mwh_per_t, "gamma_h2_mwh_per_t");
        positive(ae_single_min_mw, "ae_single_min_mw");
        positive(ae_single_max_mw, "ae_single_max_mw");
        if (n_ae <= 0) throw ValidationError("plant.n_ae: must be a positive count");
        if (ae_single_min_mw > ae_single_max_mw) {
            throw ValidationError("plant.ae_single_min_mw exceeds ae_single_max_mw");
        }
        frac(phi_eh, "phi_eh");
        frac(gamma_in, "gamma_in");
        frac(gamma_out, "gamma_out");
        positive(ht_cap_t, "ht_cap_t");
        positive(ht_max_t, "ht_max_t");
        if (ht_min_t < 0.0) throw ValidationError("plant.ht_min_t: must be non-negative");
        if (!(ht_min_t < ht_max_t)) throw ValidationError("plant.ht_min_t must be below ht_max_t");
        if (0.5 * ht_cap_t < ht_min_t || 0.5 * ht_cap_t > ht_max_t) {
            throw ValidationError("plant: cyclic storage level 0.5*ht_cap_t lies outside [ht_min_t, ht_max_t]");
        }
        positive(comp_coeff_mwh_per_t, "comp_coeff_mwh_per_t");
        positive(exp_coeff_mwh_per_t, "exp_coeff_mwh_per_t");
        if (exp_flow_cap_tph < 0.0) throw ValidationError("plant.exp_flow_cap_tph: must be non-negative");
        if (ftg_coeff_mwh_per_t < 0.0 || whb_coeff_mwh_per_t < 0.0) {
            throw ValidationError("plant: heat recovery coefficients must be non-negative");
        }
        positive(sf_heat_coeff_mwh_per_t, "sf_heat_coeff_mwh_per_t");
        if (eh_net_coeff_mwh_per_t() < 0.0) {
            throw ValidationError("plant: ftg + whb recovery exceeds sf_heat_coeff; heat-led balance would force a negative heater load");
        }
        positive(leh_cap_mw, "leh_cap_mw");
        if (phi_ec_t_per_mwh < 0.0 || carbon_tax_usd_per_t < 0.0) {
            throw ValidationError("plant: carbon parameters must be non-negative");
        }
    }
};

}  // namespace h2dri

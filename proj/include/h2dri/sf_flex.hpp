#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "h2dri/errors.hpp"

namespace h2dri {

// Shaft furnace flexibility parameters. Hourly setpoints (quasi-steady
// states) are the decision quantities; the realized discharge follows a
// first-order transition between consecutive setpoints with lag factor
// beta = exp(-dt/t_trans).
struct SfFlexParams {
    double t_trans_h = 1.27;      // transition time constant
    double dt_h = 1.0;            // scheduling step
    double m_min_tph = 30.0;      // discharge lower bound
    double m_max_tph = 150.0;     // discharge upper bound
    double ramp_dn_tph = -120.0;  // setpoint step lower bound (signed)
    double ramp_up_tph = 120.0;   // setpoint step upper bound
    double m_rated_tph = 125.0;   // rated discharge, base for RMSE percentages
    double phi_h2 = 25.29 / 150.0;  // t H2 per t DRI

    double beta() const { return std::exp(-dt_h / t_trans_h); }

    void validate() const {
        if (!(t_trans_h > 0.0) || !std::isfinite(t_trans_h)) {
            throw ValidationError("sf.t_trans_h: must be strictly positive");
        }
        if (!(dt_h > 0.0)) throw ValidationError("sf.dt_h: must be strictly positive");
        if (!(m_min_tph > 0.0) || !(m_min_tph <= m_max_tph)) {
            throw ValidationError("sf: discharge bounds require 0 < m_min_tph <= m_max_tph");
        }
        if (!(ramp_dn_tph <= 0.0 && 0.0 <= ramp_up_tph)) {
            throw ValidationError("sf: ramp bounds require ramp_dn_tph <= 0 <= ramp_up_tph");
        }
        if (!(m_rated_tph > 0.0)) throw ValidationError("sf.m_rated_tph: must be strictly positive");
        if (!(phi_h2 > 0.0)) throw ValidationError("sf.phi_h2: must be strictly positive");
        const double b = beta();
        if (!(b > 0.0 && b < 1.0)) throw ValidationError("sf: lag factor exp(-dt/t_trans) must lie in (0,1)");
    }
};

// A setpoint plan with the discharge it produced; met_rate is optional
// (empty when the data source does not report product quality).
struct Trajectory {
    std::vector<double> qss;   // t/h, quasi-steady setpoints
    std::vector<double> dis;   // t/h, realized discharge
    std::vector<double> met_rate;  // fraction, same length as qss when present

    bool has_met() const { return !met_rate.empty(); }

    void validate() const {
        if (qss.size() != dis.size()) {
            throw ValidationError("trajectory: qss and dis lengths differ");
        }
        if (!met_rate.empty() && met_rate.size() != qss.size()) {
            throw ValidationError("trajectory: met_rate length differs from qss");
        }
        for (std::size_t i = 0; i < qss.size(); ++i) {
            if (!std::isfinite(qss[i]) || !std::isfinite(dis[i])) {
                throw ValidationError("trajectory: non-finite sample at step " + std::to_string(i + 1));
            }
        }
    }
};

inline void check_setpoint_in_bounds(double q, const SfFlexParams& p, std::size_t index_1based) {
    if (q < p.m_min_tph - 1e-9 || q > p.m_max_tph + 1e-9) {
        throw ValidationError("setpoint[" + std::to_string(index_1based) + "] = " + std::to_string(q) +
                              " t/h outside [" + std::to_string(p.m_min_tph) + ", " +
                              std::to_string(p.m_max_tph) + "]");
    }
}

// Rejects a setpoint plan that violates the discharge band or the ramp
// limits; index in the message is 1-based.
inline void check_plan(std::span<const double> plan, const SfFlexParams& p) {
    for (std::size_t k = 0; k < plan.size(); ++k) {
        check_setpoint_in_bounds(plan[k], p, k + 1);
    }
    for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
        const double step = plan[k + 1] - plan[k];
        if (step < p.ramp_dn_tph - 1e-9 || step > p.ramp_up_tph + 1e-9) {
            throw ValidationError("setpoint step " + std::to_string(k + 1) + "->" + std::to_string(k + 2) +
                                  " of " + std::to_string(step) + " t/h outside ramp limits [" +
                                  std::to_string(p.ramp_dn_tph) + ", " + std::to_string(p.ramp_up_tph) + "]");
        }
    }
}

// Realized discharge after one scheduling step from setpoint q_prev to
// q_next: q_next + (q_prev - q_next) * exp(-dt/t_trans). Always lies
// between the two setpoints.
inline double transition_step(double q_prev, double q_next, const SfFlexParams& p) {
    check_setpoint_in_bounds(q_prev, p, 1);
    check_setpoint_in_bounds(q_next, p, 2);
    return q_next + (q_prev - q_next) * p.beta();
}

// Discharge sequence the flexibility model predicts for a setpoint plan.
// The plant is assumed settled at plan[0] before the first step.
inline std::vector<double> predict_trajectory(std::span<const double> plan, const SfFlexParams& p) {
    check_plan(plan, p);
    std::vector<double> dis;
    dis.reserve(plan.size());
    if (plan.empty()) return dis;
    dis.push_back(plan[0]);
    for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
        dis.push_back(plan[k + 1] + (plan[k] - plan[k + 1]) * p.beta());
    }
    return dis;
}

// Hydrogen drawn from storage by the furnace at discharge rate m_dri.
inline double h2_consumption(double m_dri_tph, const SfFlexParams& p) {
    if (m_dri_tph < 0.0 || !std::isfinite(m_dri_tph)) {
        throw ValidationError("h2_consumption: discharge rate must be non-negative");
    }
    return p.phi_h2 * m_dri_tph;
}

struct BandCheckResult {
    bool pass = true;
    std::ptrdiff_t first_violation = -1;  // 0-based sample index, -1 when pass
    double worst_abs_dev = 0.0;
};

// Product-quality band check: every metallization sample must stay within
// setpoint +/- band.
inline BandCheckResult check_metallization(std::span<const double> met, double setpoint, double band) {
    BandCheckResult r;
    for (std::size_t i = 0; i < met.size(); ++i) {
        const double dev = std::abs(met[i] - setpoint);
        r.worst_abs_dev = std::max(r.worst_abs_dev, dev);
        if (dev > band && r.pass) {
            r.pass = false;
            r.first_violation = static_cast<std::ptrdiff_t>(i);
        }
    }
    return r;
}

inline BandCheckResult check_metallization(const Trajectory& traj, double setpoint, double band) {
    if (!traj.has_met()) {
        throw ValidationError("check_metallization: trajectory carries no metallization series");
    }
    return check_metallization(std::span<const double>(traj.met_rate), setpoint, band);
}

}  // namespace h2dri

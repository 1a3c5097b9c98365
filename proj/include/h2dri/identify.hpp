#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "h2dri/errors.hpp"
#include "h2dri/sf_flex.hpp"

namespace h2dri {

struct IdentifyResult {
    double beta = 0.0;        // fitted lag factor
    double t_trans_h = 0.0;   // -dt / ln(beta)
    double rmse_tph = 0.0;    // over all transitions
    double rmse_pct_rated = 0.0;
};

// Least-squares fit of the one-step lag factor from observed data.
//
// The model predicts dis[k+1] = qss[k+1] + (qss[k] - qss[k+1]) * beta, so
// with d_k = qss[k] - qss[k+1] and r_k = dis[k+1] - qss[k+1] the optimum is
// the closed form beta = sum(r_k d_k) / sum(d_k^2). Steps without a setpoint
// change carry no information about beta but still count toward the RMSE.
inline IdentifyResult identify_ttrans(const Trajectory& traj, const SfFlexParams& params) {
    traj.validate();
    const std::size_t n = traj.qss.size();
    if (n < 2) throw ValidationError("identify: trajectory needs at least 2 steps");

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double d = traj.qss[k] - traj.qss[k + 1];
        const double r = traj.dis[k + 1] - traj.qss[k + 1];
        num += r * d;
        den += d * d;
    }
    if (den == 0.0) {
        throw ValidationError("identify: all setpoints equal; lag factor is unidentifiable");
    }

    IdentifyResult res;
    res.beta = std::clamp(num / den, 1e-6, 1.0 - 1e-6);
    res.t_trans_h = -params.dt_h / std::log(res.beta);

    double sq = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double pred = traj.qss[k + 1] + (traj.qss[k] - traj.qss[k + 1]) * res.beta;
        const double e = traj.dis[k + 1] - pred;
        sq += e * e;
    }
    res.rmse_tph = std::sqrt(sq / static_cast<double>(n - 1));
    res.rmse_pct_rated = 100.0 * res.rmse_tph / params.m_rated_tph;
    return res;
}

// Model prediction under a fitted beta, aligned with the observed trajectory
// (first entry copies the observation; there is no transition into it).
inline std::vector<double> fitted_series(const Trajectory& traj, double beta) {
    std::vector<double> fit;
    fit.reserve(traj.qss.size());
    if (traj.qss.empty()) return fit;
    fit.push_back(traj.dis.empty() ? traj.qss[0] : traj.dis[0]);
    for (std::size_t k = 0; k + 1 < traj.qss.size(); ++k) {
        fit.push_back(traj.qss[k + 1] + (traj.qss[k] - traj.qss[k + 1]) * beta);
    }
    return fit;
}

}  // namespace h2dri

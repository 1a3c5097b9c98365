#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "h2dri/errors.hpp"
#include "h2dri/sf_flex.hpp"

namespace h2dri {

// Stand-in for the detailed dynamic shaft furnace model: a linear reference
// plant the identification experiment runs against. FirstOrder is a unit-gain
// lag with time constant t_true_h; SecondOrder is a critically damped cascade
// of two lags with stage constant t_true_h/2, so its dominant settling is
// comparable but its hourly samples no longer fit the one-step model exactly.
enum class SurrogateKind { FirstOrder, SecondOrder };

struct SurrogateSpec {
    SurrogateKind kind = SurrogateKind::FirstOrder;
    double t_true_h = 1.27;
    double substep_h = 0.01;      // sub-hourly integration step
    double met_setpoint = 0.94;   // metallization target fraction
    double met_coupling = 0.005;  // met deviation per unit of normalized tracking error

    void validate() const {
        if (!(t_true_h > 0.0) || !std::isfinite(t_true_h)) {
            throw ValidationError("surrogate.t_true_h: must be strictly positive");
        }
        if (!(substep_h > 0.0)) throw ValidationError("surrogate.substep_h: must be strictly positive");
        if (!(met_setpoint > 0.0 && met_setpoint < 1.0)) {
            throw ValidationError("surrogate.met_setpoint: must lie in (0,1)");
        }
        if (met_coupling < 0.0) throw ValidationError("surrogate.met_coupling: must be non-negative");
    }
};

struct SimulationResult {
    Trajectory sampled;                // one entry per scheduling step, for identification
    std::vector<double> fine_time_h;   // sub-hourly trace
    std::vector<double> fine_dis_tph;
    std::vector<double> fine_met;
};

// Runs the surrogate over an hourly setpoint plan. The plant starts settled
// at plan[0]; each hour holds its setpoint while the state evolves. Substeps
// use the closed-form discrete update of the continuous plant, so a
// first-order surrogate sampled at step boundaries reproduces
// transition_step() to machine precision.
inline SimulationResult simulate_reference(std::span<const double> plan, const SurrogateSpec& spec,
                                           const SfFlexParams& sf) {
    spec.validate();
    sf.validate();
    if (plan.size() < 2) throw ValidationError("surrogate: plan needs at least two setpoints");
    check_plan(plan, sf);

    const double dt = sf.dt_h;
    const int n_sub = std::max(1, static_cast<int>(std::lround(dt / spec.substep_h)));
    const double h = dt / n_sub;

    const bool second = spec.kind == SurrogateKind::SecondOrder;
    const double tau = second ? spec.t_true_h / 2.0 : spec.t_true_h;
    const double decay = std::exp(-h / tau);

    double x1 = plan[0];  // first stage (unused for FirstOrder)
    double x2 = plan[0];  // plant output

    SimulationResult res;
    res.sampled.qss.assign(plan.begin(), plan.end());
    res.sampled.dis.reserve(plan.size());
    res.sampled.met_rate.reserve(plan.size());

    auto met_of = [&](double out, double target) {
        return spec.met_setpoint - spec.met_coupling * (out - target) / sf.m_rated_tph;
    };
    auto record_fine = [&](double time_h, double out, double target) {
        res.fine_time_h.push_back(time_h);
        res.fine_dis_tph.push_back(out);
        res.fine_met.push_back(met_of(out, target));
    };

    record_fine(0.0, x2, plan[0]);
    res.sampled.dis.push_back(x2);
    res.sampled.met_rate.push_back(met_of(x2, plan[0]));

    for (std::size_t k = 1; k < plan.size(); ++k) {
        const double u = plan[k];
        for (int i = 0; i < n_sub; ++i) {
            if (second) {
                const double x1_old = x1;
                x2 = u + (x2 - u) * decay + (x1_old - u) * (h / tau) * decay;
                x1 = u + (x1_old - u) * decay;
            } else {
                x2 = u + (x2 - u) * decay;
            }
            if (!std::isfinite(x2)) {
                throw ValidationError("surrogate instability: non-finite output at step " + std::to_string(k));
            }
            record_fine((static_cast<double>(k) - 1.0) * dt + (i + 1) * h, x2, u);
        }
        res.sampled.dis.push_back(x2);
        res.sampled.met_rate.push_back(met_of(x2, u));
    }
    return res;
}

// The step experiment: hold at `from`, then command `to` and hold it for
// `hold_steps` further hours.
inline std::vector<double> step_plan(double from, double to, int hold_steps = 0) {
    std::vector<double> plan{from, to};
    for (int i = 0; i < hold_steps; ++i) plan.push_back(to);
    return plan;
}

}  // namespace h2dri

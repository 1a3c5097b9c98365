// Acceptance suite: runs every top-level requirement end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace h2dri;
namespace ht = h2dri::testing;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s  [%s]\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::vector<double> random_plan(std::mt19937_64& rng, const SfFlexParams& p, int steps,
                                int min_changes) {
    auto uni = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<double> plan;
    while (true) {
        plan.assign(1, uni(p.m_min_tph, p.m_max_tph));
        int changes = 0;
        for (int k = 1; k < steps; ++k) {
            double next = plan.back();
            if (rng() % 2 == 0) {
                const double lo = std::max(p.m_min_tph, plan.back() + p.ramp_dn_tph);
                const double hi = std::min(p.m_max_tph, plan.back() + p.ramp_up_tph);
                next = uni(lo, hi);
            }
            if (std::abs(next - plan.back()) > 1e-9) ++changes;
            plan.push_back(next);
        }
        if (changes >= min_changes) return plan;
    }
}

// ---- criterion 1: identification exactness + surrogate RMSE bound ----
void criterion_1() {
    Stopwatch sw;
    const SfFlexParams base;
    std::mt19937_64 rng(20250810);
    bool exact = true;
    double worst = 0.0;
    for (const double beta0 : {0.1, 0.3, 0.455, 0.7, 0.9}) {
        for (int rep = 0; rep < 8; ++rep) {
            SfFlexParams gen = base;
            gen.t_trans_h = -gen.dt_h / std::log(beta0);
            Trajectory traj;
            traj.qss = random_plan(rng, base, 24, 3);
            traj.dis = predict_trajectory(traj.qss, gen);
            const auto fit = identify_ttrans(traj, base);
            worst = std::max(worst, std::abs(fit.beta - beta0));
            if (std::abs(fit.beta - beta0) > 1e-9) exact = false;
        }
    }
    const double t_ident = sw.s();

    // second-order reference: the one-step fit must stay usable
    SurrogateSpec spec;
    spec.kind = SurrogateKind::SecondOrder;
    spec.t_true_h = 1.27;
    const auto sim = simulate_reference(step_plan(30.0, 125.0, 5), spec, base);
    const auto fit2 = identify_ttrans(sim.sampled, base);
    const bool rmse_ok = fit2.rmse_pct_rated <= 10.0;

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "worst |beta-beta0| = %.2e over 40 plans, %.3f s; second-order fit RMSE %.2f t/h "
                  "= %.2f%% of rated",
                  worst, t_ident, fit2.rmse_tph, fit2.rmse_pct_rated);
    report(1, "identification exactness and surrogate RMSE bound",
           exact && rmse_ok && t_ident < 1.0, detail);
}

// ---- criterion 2: metallization band on the step experiment ----
void criterion_2() {
    Stopwatch sw;
    SurrogateSpec spec;  // first-order reference, default coupling
    const auto sim = simulate_reference(step_plan(30.0, 125.0, 5), spec, SfFlexParams{});
    const auto band = check_metallization(sim.fine_met, spec.met_setpoint, 0.005);
    char detail[160];
    std::snprintf(detail, sizeof(detail), "worst deviation %.4f vs band 0.005, %.3f s",
                  band.worst_abs_dev, sw.s());
    report(2, "metallization stays within +-0.5% through the 30->125 t/h step",
           band.pass && sw.s() < 1.0, detail);
}

// shared hygiene checks (criterion 6) collected over every optimal solution
struct Hygiene {
    double worst_order = 0.0;
    double worst_ht_pin = 0.0;
    double worst_lts_cycle = 0.0;
    double worst_complementarity = 0.0;
    double worst_balance = 0.0;
    double worst_transition = 0.0;
    int solutions = 0;

    void absorb(const ScenarioConfig& cfg, const ScheduleSolution& s) {
        if (s.status != SolveStatus::Optimal) return;
        ++solutions;
        const auto& dis = s.series(VarKind::MDriDis);
        const double total = std::accumulate(dis.begin(), dis.end(), 0.0) * cfg.sf.dt_h;
        worst_order = std::max(worst_order, std::abs(total - cfg.dri_order_t));

        const auto& ht = s.series(VarKind::Ht);
        worst_ht_pin = std::max({worst_ht_pin, std::abs(ht.front() - 0.5 * cfg.plant.ht_cap_t),
                                 std::abs(ht.back() - 0.5 * cfg.plant.ht_cap_t)});
        const auto& lts = s.series(VarKind::Lts);
        worst_lts_cycle = std::max(worst_lts_cycle, std::abs(lts.front() - lts.back()));

        for (int t = 1; t <= cfg.horizon_t; ++t) {
            const auto i = static_cast<std::size_t>(t - 1);
            worst_complementarity = std::max(
                worst_complementarity,
                std::min(s.series(VarKind::PBuy)[i], s.series(VarKind::PSell)[i]));
            const double resid = cfg.wind.at_hour(t) + cfg.pv.at_hour(t) +
                                 s.series(VarKind::PBuy)[i] + s.series(VarKind::PExp)[i] -
                                 s.series(VarKind::PSell)[i] - s.series(VarKind::PAe)[i] -
                                 s.series(VarKind::PComp)[i] - s.series(VarKind::PEh)[i] -
                                 s.series(VarKind::PLeh)[i];
            worst_balance = std::max(worst_balance, std::abs(resid));
        }
        if (cfg.mode == Mode::AeSfFlex) {
            const double beta = cfg.sf.beta();
            const auto& q = s.series(VarKind::MDriQss);
            worst_transition = std::max(worst_transition, std::abs(dis[0] - q[0]));
            for (std::size_t t = 0; t + 1 < q.size(); ++t) {
                worst_transition = std::max(
                    worst_transition,
                    std::abs(dis[t + 1] - (beta * q[t] + (1.0 - beta) * q[t + 1])));
            }
        }
    }

    bool ok() const {
        return worst_order <= 1e-6 && worst_ht_pin <= 1e-6 && worst_lts_cycle <= 1e-6 &&
               worst_complementarity <= 1e-6 && worst_balance <= 1e-6 && worst_transition <= 1e-6;
    }
};

Hygiene g_hygiene;

// ---- criterion 3: oracle equivalence on 50 random tiny scenarios ----
void criterion_3() {
    Stopwatch sw;
    const BranchAndBoundEngine eng;
    std::mt19937_64 rng(314159);
    int agree = 0, optimal_pairs = 0, infeasible_pairs = 0;
    double worst_rel = 0.0;
    for (int k = 0; k < 50; ++k) {
        ScenarioConfig cfg = (k % 6 == 5) ? ht::oversized_order_scenario(rng, 4)
                                          : ht::random_feasible_scenario(rng, 4);
        cfg.mode = static_cast<Mode>(k % 3);
        const auto fast = solve(build_problem(cfg), eng);
        const auto slow = brute_force_oracle(cfg);
        if (fast.status != slow.status) continue;
        if (fast.status == SolveStatus::Optimal) {
            const double rel = std::abs(fast.objective_usd - slow.objective_usd) /
                               std::max(1.0, std::abs(slow.objective_usd));
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-6) continue;
            ++optimal_pairs;
            g_hygiene.absorb(cfg, fast);
        } else {
            ++infeasible_pairs;
        }
        ++agree;
    }
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "%d/50 agree (%d optimal, %d infeasible), worst rel diff %.2e, %.1f s", agree,
                  optimal_pairs, infeasible_pairs, worst_rel, sw.s());
    report(3, "engine agrees with exhaustive enumeration on T=4", agree == 50 && sw.s() < 60.0,
           detail);
}

// ---- criterion 4: mode monotonicity on 20 random day scenarios ----
void criterion_4() {
    const BranchAndBoundEngine eng;
    std::mt19937_64 rng(271828);
    bool monotone = true, fast_enough = true, all_optimal = true;
    double max_solve = 0.0;
    for (int k = 0; k < 20; ++k) {
        ScenarioConfig cfg = ht::random_feasible_scenario(rng, 24);
        std::map<Mode, double> obj;
        for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) {
            cfg.mode = m;
            Stopwatch one;
            const auto sol = solve(build_problem(cfg), eng);
            max_solve = std::max(max_solve, one.s());
            if (one.s() >= 5.0) fast_enough = false;
            if (sol.status != SolveStatus::Optimal) {
                all_optimal = false;
                continue;
            }
            obj[m] = sol.objective_usd;
            g_hygiene.absorb(cfg, sol);
        }
        if (obj.size() == 3) {
            const double tol = 1e-6 * (1.0 + std::abs(obj[Mode::Baseline]));
            if (!(obj[Mode::Baseline] >= obj[Mode::AeFlex] - tol &&
                  obj[Mode::AeFlex] >= obj[Mode::AeSfFlex] - tol)) {
                monotone = false;
            }
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "20 scenarios x 3 modes, slowest solve %.2f s", max_solve);
    report(4, "cost(baseline) >= cost(ae-flex) >= cost(ae-sf-flex)",
           monotone && fast_enough && all_optimal, detail);
}

// ---- criterion 5: directional cost reduction on the reference day ----
void criterion_5() {
    const BranchAndBoundEngine eng;
    ScenarioConfig cfg = synth_scenario(1, 24);
    cfg.mode = Mode::Baseline;
    const auto base = solve(build_problem(cfg), eng);
    cfg.mode = Mode::AeSfFlex;
    const auto flex = solve(build_problem(cfg), eng);
    bool ok = base.status == SolveStatus::Optimal && flex.status == SolveStatus::Optimal;
    double margin = 0.0, pct = 0.0;
    if (ok) {
        g_hygiene.absorb(cfg, flex);
        margin = base.cost_per_ton_usd - flex.cost_per_ton_usd;
        pct = 100.0 * margin / base.cost_per_ton_usd;
        ok = margin > 0.0;
    }
    char detail[200];
    std::snprintf(detail, sizeof(detail), "%.2f -> %.2f $/t, reduction %.2f $/t (%.2f%%)",
                  base.cost_per_ton_usd, flex.cost_per_ton_usd, margin, pct);
    report(5, "full flexibility strictly cuts cost per ton on the synthetic day", ok, detail);
}

// ---- criterion 6: feasibility hygiene over everything solved above ----
void criterion_6() {
    char detail[240];
    std::snprintf(detail, sizeof(detail),
                  "%d solutions; worst: order %.1e t, HT pin %.1e t, Lts cycle %.1e MWh, "
                  "min(buy,sell) %.1e MW, balance %.1e MW, transition %.1e t/h",
                  g_hygiene.solutions, g_hygiene.worst_order, g_hygiene.worst_ht_pin,
                  g_hygiene.worst_lts_cycle, g_hygiene.worst_complementarity,
                  g_hygiene.worst_balance, g_hygiene.worst_transition);
    report(6, "order sum, cyclic storages, exclusivity, balance and lag residuals within 1e-6",
           g_hygiene.ok() && g_hygiene.solutions > 60, detail);
}

// ---- criterion 7: DR metric identities ----
void criterion_7() {
    const BranchAndBoundEngine eng;
    ScenarioConfig cfg = synth_scenario(1, 24);
    cfg.mode = Mode::Baseline;
    const auto base = solve(build_problem(cfg), eng);
    cfg.mode = Mode::AeFlex;
    const auto ae = solve(build_problem(cfg), eng);
    cfg.mode = Mode::AeSfFlex;
    const auto full = solve(build_problem(cfg), eng);

    bool ok = base.status == SolveStatus::Optimal && ae.status == SolveStatus::Optimal &&
              full.status == SolveStatus::Optimal;
    double worst_sym = 0.0, worst_tri = -1.0, self_avg = -1.0;
    if (ok) {
        const auto self = dr_potential(base, base);
        self_avg = self.avg_delta_p_mw;
        ok = ok && self.avg_delta_p_mw == 0.0;
        for (const double d : self.delta_p_mw) ok = ok && d == 0.0;

        const auto ab = dr_potential(base, ae);
        const auto ba = dr_potential(ae, base);
        const auto ac = dr_potential(base, full);
        const auto bc = dr_potential(ae, full);
        for (std::size_t i = 0; i < ab.delta_p_mw.size(); ++i) {
            worst_sym = std::max(worst_sym, std::abs(ab.delta_p_mw[i] - ba.delta_p_mw[i]));
            worst_tri = std::max(worst_tri,
                                 ac.delta_p_mw[i] - (ab.delta_p_mw[i] + bc.delta_p_mw[i]));
        }
        ok = ok && worst_sym <= 1e-12 && worst_tri <= 1e-9;
    }
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "self-potential %.1f MW, symmetry gap %.1e, triangle slack %.1e", self_avg,
                  worst_sym, worst_tri);
    report(7, "DR potential identities (zero on self, symmetric, triangle inequality)", ok, detail);
}

// ---- criterion 8: byte-identical compare runs ----
void criterion_8() {
#ifndef H2DRI_CLI_PATH
    report(8, "deterministic compare output", false, "CLI path not compiled in");
#else
    const auto dir = ht::make_temp_dir("acceptance_det");
    bool ok = ht::run_cli("synth --seed 1 --horizon 24 --out " + dir.string()).exit_code == 0;
    ok = ok && ht::run_cli("compare --config " + (dir / "scenario.json").string() + " --out " +
                           (dir / "a").string())
                       .exit_code == 0;
    ok = ok && ht::run_cli("compare --config " + (dir / "scenario.json").string() + " --out " +
                           (dir / "b").string())
                       .exit_code == 0;
    int identical = 0, compared = 0;
    if (ok) {
        for (const std::string f :
             {"comparison.txt", "comparison.csv", "summary_baseline.json", "summary_ae-flex.json",
              "summary_ae-sf-flex.json", "dispatch_baseline.csv", "dispatch_ae-flex.csv",
              "dispatch_ae-sf-flex.csv", "dr_report_ae-flex.json", "dr_report_ae-sf-flex.json"}) {
            ++compared;
            if (ht::slurp(dir / "a" / f) == ht::slurp(dir / "b" / f)) ++identical;
        }
        ok = identical == compared;
    }
    char detail[120];
    std::snprintf(detail, sizeof(detail), "%d/%d output files byte-identical", identical, compared);
    report(8, "repeated compare runs are byte-identical", ok, detail);
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}

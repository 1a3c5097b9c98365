// h2dri: scheduling and demand-response analysis for hydrogen
// direct-reduction ironmaking plants.
//
// Exit codes: 0 success, 2 usage or input error, 3 infeasible schedule,
// 4 engine failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "h2dri/h2dri.hpp"

namespace fs = std::filesystem;
using namespace h2dri;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory: " + dir.string());
}

std::pair<double, double> parse_step(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("--step expects FROM:TO, got '" + s + "'");
    }
    try {
        return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ValidationError("--step expects numeric FROM:TO, got '" + s + "'");
    }
}

int cmd_synth(long long seed, int horizon, const fs::path& out) {
    Timer timer;
    ensure_out_dir(out);
    const ScenarioConfig cfg = synth_scenario(static_cast<std::uint64_t>(seed), horizon);
    const fs::path cfg_path = out / "scenario.json";
    save_scenario(cfg, cfg_path);
    std::cout << "wrote " << cfg_path.string() << " (T=" << horizon << ", order=" << cfg.dri_order_t
              << " t)\n";
    write_manifest({"synth", cfg_path.string(), seed, "", out.string(), kVersion, timer.seconds()},
                   out / "manifest.json");
    return 0;
}

int cmd_schedule(const fs::path& config, const std::string& mode_str, const fs::path& out,
                 const std::string& lp_dump) {
    Timer timer;
    ensure_out_dir(out);
    ScenarioConfig cfg = load_scenario(config);
    if (!mode_str.empty()) cfg.mode = mode_from_name(mode_str);
    const ScheduleProblem problem = build_problem(cfg);
    if (!lp_dump.empty()) {
        std::ofstream lp(lp_dump);
        if (!lp) throw ValidationError("cannot write LP dump: " + lp_dump);
        lp << problem.lp_text();
    }
    const auto engine = engine_from_env();
    const ScheduleSolution sol = solve(problem, *engine);
    write_summary_json(sol, out / "summary.json");
    if (sol.status != SolveStatus::Optimal) {
        std::cerr << "schedule is " << status_name(sol.status);
        if (!sol.infeasibility_hint.empty()) {
            std::cerr << " (first conflicting constraint: " << sol.infeasibility_hint << ")";
        }
        std::cerr << "\n";
        return 3;
    }
    write_dispatch_csv(sol, out / "dispatch.csv");
    write_manifest({"schedule", config.string(), -1, sol.engine, out.string(), kVersion,
                    timer.seconds()},
                   out / "manifest.json");
    std::printf("%s: objective %.2f $, cost per ton %.2f $/t (engine %s, %d nodes)\n",
                mode_name(cfg.mode), sol.objective_usd, sol.cost_per_ton_usd, sol.engine.c_str(),
                sol.nodes);
    return 0;
}

int cmd_compare(const fs::path& config, const fs::path& out, bool with_oracle) {
    Timer timer;
    ensure_out_dir(out);
    ScenarioConfig cfg = load_scenario(config);
    const auto engine = engine_from_env();

    std::map<Mode, ScheduleSolution> sols;
    for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) {
        cfg.mode = m;
        const ScheduleSolution sol = solve(build_problem(cfg), *engine);
        if (sol.status != SolveStatus::Optimal) {
            std::cerr << mode_name(m) << " schedule is " << status_name(sol.status);
            if (!sol.infeasibility_hint.empty()) {
                std::cerr << " (first conflicting constraint: " << sol.infeasibility_hint << ")";
            }
            std::cerr << "\n";
            return 3;
        }
        write_dispatch_csv(sol, out / (std::string("dispatch_") + mode_name(m) + ".csv"));
        write_summary_json(sol, out / (std::string("summary_") + mode_name(m) + ".json"));
        sols.emplace(m, sol);
    }

    const auto rows = compare_modes(sols);
    std::string table = render_comparison_text(rows);

    for (const Mode m : {Mode::AeFlex, Mode::AeSfFlex}) {
        const DrReport r = dr_potential(sols.at(Mode::Baseline), sols.at(m));
        std::ofstream jf(out / (std::string("dr_report_") + mode_name(m) + ".json"));
        jf << dr_report_json(r).dump(2) << "\n";
        std::vector<std::vector<double>> csv_rows;
        for (std::size_t i = 0; i < r.delta_p_mw.size(); ++i) {
            csv_rows.push_back({static_cast<double>(i + 1), r.delta_p_mw[i]});
        }
        write_csv(out / (std::string("dr_report_") + mode_name(m) + ".csv"),
                  {"hour", "delta_p_mw"}, csv_rows, 6);
    }

    if (with_oracle) {
        if (cfg.horizon_t > 4) {
            throw ValidationError("--oracle needs horizon_hours <= 4 (got " +
                                  std::to_string(cfg.horizon_t) + ")");
        }
        char line[160];
        for (const Mode m : {Mode::Baseline, Mode::AeFlex, Mode::AeSfFlex}) {
            cfg.mode = m;
            const ScheduleSolution ref = brute_force_oracle(cfg);
            const double a = sols.at(m).objective_usd, b = ref.objective_usd;
            const double rel = std::abs(a - b) / std::max(1.0, std::abs(b));
            std::snprintf(line, sizeof(line),
                          "oracle %-10s engine %.6f vs enumeration %.6f (rel diff %.2e) %s\n",
                          mode_name(m), a, b, rel, rel <= 1e-6 ? "AGREE" : "DISAGREE");
            table += line;
        }
    }

    {
        std::ofstream tf(out / "comparison.txt");
        tf << table;
        std::ofstream cf(out / "comparison.csv");
        cf << "mode,cost_per_ton_usd,avg_dr_potential_mw,cost_reduction_pct\n";
        char buf[128];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", mode_name(r.mode),
                          r.cost_per_ton_usd, r.avg_dr_potential_mw, r.cost_reduction_pct);
            cf << buf;
        }
    }
    std::cout << table;
    write_manifest({"compare", config.string(), -1, engine->name(), out.string(), kVersion,
                    timer.seconds()},
                   out / "manifest.json");
    return 0;
}

int cmd_identify(const std::string& traj_csv, const std::string& synthetic, double t_true,
                 const std::string& step, int hold, const fs::path& out) {
    Timer timer;
    ensure_out_dir(out);
    SfFlexParams sf;  // rated 125 t/h, band 30..150
    Trajectory traj;
    SimulationResult sim;
    bool have_sim = false;

    if (!traj_csv.empty()) {
        traj = read_trajectory_csv(traj_csv);
    } else if (!synthetic.empty()) {
        SurrogateSpec spec;
        if (synthetic == "first-order") {
            spec.kind = SurrogateKind::FirstOrder;
        } else if (synthetic == "second-order") {
            spec.kind = SurrogateKind::SecondOrder;
        } else {
            throw ValidationError("--synthetic expects first-order or second-order, got '" +
                                  synthetic + "'");
        }
        spec.t_true_h = t_true;
        const auto [from, to] = parse_step(step);
        sim = simulate_reference(step_plan(from, to, hold), spec, sf);
        traj = sim.sampled;
        have_sim = true;
    } else {
        throw ValidationError("identify needs either --traj CSV or --synthetic KIND");
    }

    const IdentifyResult fit = identify_ttrans(traj, sf);
    std::printf("T_trans          %.6f h\n", fit.t_trans_h);
    std::printf("lag factor beta  %.9f\n", fit.beta);
    std::printf("RMSE             %.4f t/h\n", fit.rmse_tph);
    std::printf("RMSE %% of rated  %.2f %% (rated %.0f t/h)\n", fit.rmse_pct_rated, sf.m_rated_tph);
    if (have_sim) {
        const auto band = check_metallization(sim.fine_met, 0.94, 0.005);
        std::printf("metallization    %s (worst deviation %.4f, band 0.005)\n",
                    band.pass ? "within band" : "OUT OF BAND", band.worst_abs_dev);
    } else if (traj.has_met()) {
        const auto band = check_metallization(traj, 0.94, 0.005);
        std::printf("metallization    %s (worst deviation %.4f, band 0.005)\n",
                    band.pass ? "within band" : "OUT OF BAND", band.worst_abs_dev);
    }

    const std::vector<double> fitted = fitted_series(traj, fit.beta);
    std::ofstream fcsv(out / "identify_fit.csv");
    if (!fcsv) throw ValidationError("cannot write: " + (out / "identify_fit.csv").string());
    fcsv << "step,qss_tph,observed_tph,fitted_tph\n";
    char buf[128];
    for (std::size_t k = 0; k < traj.qss.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f\n", k + 1, traj.qss[k], traj.dis[k],
                      fitted[k]);
        fcsv << buf;
    }
    write_manifest({"identify", traj_csv.empty() ? "(synthetic)" : traj_csv, -1, "", out.string(),
                    kVersion, timer.seconds()},
                   out / "manifest.json");
    return 0;
}

int cmd_report(const fs::path& dir) {
    const fs::path table = dir / "comparison.txt";
    std::ifstream in(table);
    if (!in) throw ValidationError("no comparison.txt under " + dir.string() +
                                   " (run `h2dri compare` first)");
    std::cout << in.rdbuf();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scheduling and demand-response analysis for hydrogen direct-reduction plants"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic scenario");
    long long seed = 1;
    int horizon = 24;
    std::string out_dir = "out";
    synth->add_option("--seed", seed, "generator seed");
    synth->add_option("--horizon", horizon, "hours in the scheduling day");
    synth->add_option("--out", out_dir, "output directory");

    // schedule
    auto* schedule = app.add_subcommand("schedule", "solve one flexibility mode");
    std::string config, mode_str, lp_dump;
    schedule->add_option("--config", config, "scenario JSON")->required();
    schedule->add_option("--mode", mode_str, "baseline | ae-flex | ae-sf-flex");
    schedule->add_option("--out", out_dir, "output directory");
    schedule->add_option("--dump-lp", lp_dump, "also write the model in LP text form");

    // compare
    auto* compare = app.add_subcommand("compare", "solve all three modes and tabulate DR potential");
    bool with_oracle = false;
    compare->add_option("--config", config, "scenario JSON")->required();
    compare->add_option("--out", out_dir, "output directory");
    compare->add_flag("--oracle", with_oracle, "cross-check against enumeration (horizon <= 4)");

    // identify
    auto* identify = app.add_subcommand("identify", "fit the furnace transition constant");
    std::string traj_csv, synthetic, step = "30:125";
    double t_true = 1.27;
    int hold = 0;
    identify->add_option("--traj", traj_csv, "trajectory CSV (step,qss_tph,dis_tph,met_rate)");
    identify->add_option("--synthetic", synthetic, "first-order | second-order reference plant");
    identify->add_option("--t-true", t_true, "true time constant of the reference plant, hours");
    identify->add_option("--step", step, "setpoint step FROM:TO in t/h");
    identify->add_option("--hold", hold, "extra hours holding the target setpoint");
    identify->add_option("--out", out_dir, "output directory");

    // report
    auto* report = app.add_subcommand("report", "re-print the comparison table of a finished run");
    std::string report_dir;
    report->add_option("--dir", report_dir, "directory written by `h2dri compare`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(seed, horizon, out_dir);
        if (schedule->parsed()) return cmd_schedule(config, mode_str, out_dir, lp_dump);
        if (compare->parsed()) return cmd_compare(config, out_dir, with_oracle);
        if (identify->parsed()) return cmd_identify(traj_csv, synthetic, t_true, step, hold, out_dir);
        if (report->parsed()) return cmd_report(report_dir);
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

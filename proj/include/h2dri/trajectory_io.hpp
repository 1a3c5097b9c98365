#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "h2dri/csv.hpp"
#include "h2dri/sf_flex.hpp"

namespace h2dri {

// Trajectory CSV contract: step,qss_tph,dis_tph,met_rate with step = 1..K.
// met_rate cells are "nan" when no quality series exists.

inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    traj.validate();
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.qss.size());
    for (std::size_t k = 0; k < traj.qss.size(); ++k) {
        rows.push_back({static_cast<double>(k + 1), traj.qss[k], traj.dis[k],
                        traj.has_met() ? traj.met_rate[k] : std::numeric_limits<double>::quiet_NaN()});
    }
    write_csv(path, {"step", "qss_tph", "dis_tph", "met_rate"}, rows);
}

inline Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    expect_header(t, {"step", "qss_tph", "dis_tph", "met_rate"}, path.string());
    Trajectory traj;
    bool any_met = false;
    for (const auto& row : t.rows) {
        traj.qss.push_back(row[1]);
        traj.dis.push_back(row[2]);
        traj.met_rate.push_back(row[3]);
        if (!std::isnan(row[3])) any_met = true;
    }
    if (!any_met) traj.met_rate.clear();
    traj.validate();
    return traj;
}

}  // namespace h2dri

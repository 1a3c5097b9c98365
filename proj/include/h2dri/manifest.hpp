#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "h2dri/errors.hpp"
#include "h2dri/version.hpp"

namespace h2dri {

// Reproducibility record written next to every command's outputs. Re-running
// the same command with the same engine reproduces the outputs byte for byte;
// wall_time_s is the one field allowed to differ.
struct RunManifest {
    std::string command;
    std::string config_path;
    long long seed = -1;  // -1 when the command takes no seed
    std::string engine;
    std::string out_dir;
    std::string tool_version = kVersion;
    double wall_time_s = 0.0;
};

inline void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    nlohmann::json j;
    j["command"] = m.command;
    j["config_path"] = m.config_path;
    if (m.seed >= 0) j["seed"] = m.seed;
    j["engine"] = m.engine;
    j["out_dir"] = m.out_dir;
    j["tool_version"] = m.tool_version;
    j["wall_time_s"] = m.wall_time_s;

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ValidationError("cannot write manifest: " + tmp.string());
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);  // atomic on POSIX
}

}  // namespace h2dri

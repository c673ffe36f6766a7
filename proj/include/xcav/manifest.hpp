#pragma once

#include <string>
#include <vector>

namespace xcav {

inline constexpr const char* tool_version = "1.0.0";

/// Reproducibility record written next to every command's outputs. Identical
/// configs yield identical payload hashes; only the timing fields vary.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_hash; // FNV-1a of the raw config text
    std::string version = tool_version;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> grid_params; // key, value
    std::vector<std::pair<std::string, std::string>> outputs;     // path, hash

    void add_param(const std::string& key, const std::string& value) {
        grid_params.emplace_back(key, value);
    }
    void add_output(const std::string& path); // hashes the file
};

void write_manifest(const std::string& path, const RunManifest& m);

} // namespace xcav

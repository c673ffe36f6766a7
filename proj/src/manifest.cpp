#include "xcav/manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "xcav/errors.hpp"
#include "xcav/io.hpp"

namespace xcav {

void RunManifest::add_output(const std::string& path) {
    outputs.emplace_back(path, hex64(fnv1a_file(path)));
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["config"] = m.config_path;
    j["config_hash"] = m.config_hash;
    j["tool_version"] = m.version;
    j["wall_seconds"] = m.wall_seconds;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : m.grid_params) params[k] = v;
    j["grid_params"] = params;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [p, h] : m.outputs)
        outs.push_back({{"path", p}, {"fnv1a", h}});
    j["outputs"] = outs;
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
    if (!os) throw io_error("write failed for '" + path + "'");
}

} // namespace xcav

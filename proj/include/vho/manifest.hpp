#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vho/version.hpp"

namespace vho {

/// Everything needed to rerun a CLI invocation and find its outputs.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> artifacts;
    std::string tool_version{kVersion};
    double duration_seconds = 0.0;
};

inline nlohmann::ordered_json to_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["parameters"] = manifest.parameters;
    j["seed"] = manifest.seed;
    j["artifacts"] = manifest.artifacts;
    j["tool_version"] = manifest.tool_version;
    j["duration_seconds"] = manifest.duration_seconds;
    return j;
}

inline void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_manifest: cannot open " + path.string());
    }
    out << to_json(manifest).dump(2) << '\n';
}

}  // namespace vho

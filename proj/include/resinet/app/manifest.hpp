#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resinet/sim.hpp"

namespace resinet::app {

/// Hex SHA-1 of "blob <size>\0<content>", the id git assigns to a file.
std::string git_blob_hash(const std::string& content);

struct RunManifest {
    std::string command;
    std::string config_path;  ///< empty when running on defaults
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::string resolved_config;  ///< canonical text, parses back to the same settings
    std::string config_hash;      ///< git_blob_hash(resolved_config)
    std::vector<std::string> methods;
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

void write_final_state(const std::string& path, const ExperimentResult& result);

}  // namespace resinet::app

#pragma once

#include "fep/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace fep {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string config_hash;
    std::string version = kToolVersion;
    std::uint64_t master_seed = 0;
    nlohmann::json replica_seeds = nlohmann::json::array();
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    bool ok = true;
    std::string error;
    /// Kind-specific result summary, also written to summary.json.
    nlohmann::json summary;

    nlohmann::json to_json(const ExperimentConfig& c) const;
};

/// Runs a validated experiment, writes its outputs under c.output_dir and a
/// manifest.json. On failure the manifest is still written, marked failed,
/// and the error is rethrown.
RunManifest run(ExperimentConfig c);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// %.17g formatting, round-trips doubles exactly.
std::string fmt_double(double x);

}  // namespace fep

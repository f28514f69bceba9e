#pragma once

#include "fep/profile.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fep {

enum class ExperimentKind { Simulate, Pde, HydroCompare, Transience, MeasureTable, Verify };

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(const std::string& s);

/// Validated experiment description. Fields irrelevant to the kind keep
/// their defaults and are not serialized.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Verify;
    std::uint64_t master_seed = 1;
    bool seed_given = false;
    std::string output_dir = "out";
    int threads = 1;
    bool deterministic = true;

    int n = 0;
    std::vector<int> n_list;
    Profile profile = Profile::constant(0.75);
    std::string initial;  ///< simulate: explicit configuration string
    double t_end = 0.0;
    int replicas = 1;
    bool record_events = false;
    int grid_m = 512;
    int snapshots = 10;
    double cfl = 0.9;
    int block_l = 0;
    double delta = 0.0;
    double ell_exponent = 3.0;
    double t_max = 1.0;
    std::vector<double> rho_list;
    int l_max = 10;
    int samples = 100000;
    int table_n = 8;
    int table_k = 5;
    int window_l = 3;
    int count_n_max = 14;
    std::vector<std::string> suites;

    /// Normalized document with defaults filled in.
    nlohmann::json to_json() const;
    /// FNV-1a of the normalized document, hex.
    std::string hash() const;
};

/// Thrown by validate_config; one message per offending field.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

ExperimentConfig validate_config(const nlohmann::json& doc);

nlohmann::json profile_to_json(const Profile& p);

}  // namespace fep

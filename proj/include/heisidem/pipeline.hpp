#pragma once

// Job configuration and the task pipeline
// validate -> census -> hecke -> metric -> fusion -> equivariantize -> certify.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "heisidem/io.hpp"

namespace heisidem::pipeline {

using io::json;

inline constexpr int kSchemaVersion = 1;
inline const std::vector<std::string> kTaskOrder = {"validate", "census",         "hecke", "metric",
                                                    "fusion",   "equivariantize", "certify"};

/// Malformed or inconsistent configuration. what() is "file:line: message".
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string name;
    std::string source;  // config path
    /// Absent for metric-only jobs.
    std::shared_ptr<const model::ModelDatum> datum;
    std::string family;
    std::vector<std::string> tasks;  // in pipeline order
    /// The "metric" block, or null.
    json metric;
    std::string out_path = "out";
    bool verbose = false;
    bool include_values = false;
    /// Line of every JSON pointer in the config, for error anchoring.
    std::map<std::string, std::size_t> lines;
};

struct LoadOptions {
    bool skip_assoc_check = false;
};

/// Parses and checks a config: schema, then group construction, subgroups
/// and character. Throws ConfigError anchored at the offending line.
Job load_config(const std::filesystem::path& path, LoadOptions options = {});
Job parse_config(const std::string& text, const std::string& source, LoadOptions options = {});

struct RunOptions {
    unsigned jobs = 1;
    bool verbose = false;
    /// When set, replaces the configured task list.
    std::optional<std::vector<std::string>> tasks;
    std::ostream* log = nullptr;
};

struct RunResult {
    json report;
    json timings;
    std::optional<json> ring;
    std::optional<json> certificate;
    /// 0 when every verdict passes, 1 otherwise.
    int exit_code = 0;
};

RunResult run(const Job& job, const RunOptions& options = {});

/// Writes report.json, timings.json and, when present, ring.json and
/// certificate.json into `dir`.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// JSON pointers at which two documents differ (value, type or presence).
std::vector<std::string> json_diff(const json& a, const json& b);

}  // namespace heisidem::pipeline

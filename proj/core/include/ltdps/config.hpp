#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ltdps/eval.hpp"

namespace ltdps {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full tool configuration, loadable from a flat key=value file. Every key
/// has a default; unknown keys are rejected. The classification thresholds
/// follow rssi_max tertiles unless set explicitly.
struct AppConfig {
    ExperimentConfig experiment;
    int runs = 1;
    std::string out_dir = ".";

    /// Key list with one-line descriptions, for --help and the README.
    static std::vector<std::pair<std::string, std::string>> key_help();
};

AppConfig default_app_config();

/// Applies "key=value". Throws ConfigError for unknown keys or bad values.
void apply_config_entry(AppConfig& cfg, const std::string& key,
                        const std::string& value);

/// Loads a key=value file ('#' starts a comment). Threshold keys that were
/// not set explicitly are re-derived from rssi_max after the file is read.
AppConfig load_config_file(const std::string& filename);

}  // namespace ltdps

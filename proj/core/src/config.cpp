#include "ltdps/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ltdps {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + value + "'");
    }
}

std::vector<Scheme> parse_schemes(const std::string& value) {
    std::vector<Scheme> schemes;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        const auto scheme = scheme_from_string(token);
        if (!scheme) throw ConfigError("unknown scheme: '" + token + "'");
        schemes.push_back(*scheme);
    }
    if (schemes.empty()) throw ConfigError("schemes list is empty");
    return schemes;
}

}  // namespace

AppConfig default_app_config() { return AppConfig{}; }

std::vector<std::pair<std::string, std::string>> AppConfig::key_help() {
    return {
        {"seed", "master random seed (default 1)"},
        {"history_size", "paths generated into the history database (default 10000)"},
        {"test_paths", "paths in the evaluation test set (default 10)"},
        {"path_min_len", "minimum APs per generated path (default 3)"},
        {"path_max_len", "maximum APs per generated path (default 6)"},
        {"schemes", "comma list of ltdps,tm,ip to evaluate (default all)"},
        {"ap_rows", "AP lattice rows (default 5)"},
        {"ap_cols", "AP lattice columns (default 5)"},
        {"rssi_max", "vendor RSSI scale top, 1..255 (default 100)"},
        {"delta_e", "error factor for similar readings (default 5)"},
        {"delta_t", "sampling interval in ticks (default 1)"},
        {"region_threshold", "region-membership RSSI threshold (default rssi_max/3)"},
        {"lv_mv_bound", "LV/MV classification bound (default rssi_max/3)"},
        {"mv_hv_bound", "MV/HV classification bound (default 2*rssi_max/3)"},
        {"noise_amplitude", "uniform RSSI noise range, <= delta_e (default 2)"},
        {"rssi_range", "propagation radius in region widths (default 1.75)"},
        {"corruption_factor", "weight of indirect path counts (default 0.5)"},
        {"runs", "independent seeded evaluation runs (default 1)"},
        {"out_dir", "directory for report CSV files (default .)"},
    };
}

void apply_config_entry(AppConfig& cfg, const std::string& key,
                        const std::string& value) {
    ExperimentConfig& e = cfg.experiment;
    if (key == "seed") {
        e.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "history_size") {
        e.history_size = static_cast<int>(parse_long(key, value));
        if (e.history_size < 1) throw ConfigError("history_size must be >= 1");
    } else if (key == "test_paths") {
        e.test_paths = static_cast<int>(parse_long(key, value));
        if (e.test_paths < 1) throw ConfigError("test_paths must be >= 1");
    } else if (key == "path_min_len") {
        e.min_len = static_cast<int>(parse_long(key, value));
    } else if (key == "path_max_len") {
        e.max_len = static_cast<int>(parse_long(key, value));
    } else if (key == "schemes") {
        e.schemes = parse_schemes(value);
    } else if (key == "ap_rows") {
        e.ap_rows = static_cast<int>(parse_long(key, value));
    } else if (key == "ap_cols") {
        e.ap_cols = static_cast<int>(parse_long(key, value));
    } else if (key == "rssi_max") {
        const long v = parse_long(key, value);
        if (v < 1 || v > 255) throw ConfigError("rssi_max must be in 1..255");
        e.scale.rssi_max = static_cast<int>(v);
    } else if (key == "delta_e") {
        e.rssi.delta_e = static_cast<int>(parse_long(key, value));
    } else if (key == "delta_t") {
        e.rssi.delta_t = static_cast<int>(parse_long(key, value));
    } else if (key == "region_threshold") {
        e.rssi.region_threshold = static_cast<int>(parse_long(key, value));
    } else if (key == "lv_mv_bound") {
        e.rssi.lv_mv_bound = static_cast<int>(parse_long(key, value));
    } else if (key == "mv_hv_bound") {
        e.rssi.mv_hv_bound = static_cast<int>(parse_long(key, value));
    } else if (key == "noise_amplitude") {
        e.rssi.noise_amplitude = static_cast<int>(parse_long(key, value));
    } else if (key == "rssi_range") {
        e.rssi.range = parse_double(key, value);
        if (e.rssi.range <= 0.0) throw ConfigError("rssi_range must be positive");
    } else if (key == "corruption_factor") {
        e.scoring.corruption_factor = parse_double(key, value);
        if (e.scoring.corruption_factor < 0.0 || e.scoring.corruption_factor > 1.0) {
            throw ConfigError("corruption_factor must be in [0, 1]");
        }
    } else if (key == "runs") {
        cfg.runs = static_cast<int>(parse_long(key, value));
        if (cfg.runs < 1) throw ConfigError("runs must be >= 1");
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else {
        throw ConfigError("unknown config key: '" + key + "'");
    }
}

AppConfig load_config_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ConfigError("cannot open config file: " + filename);

    AppConfig cfg = default_app_config();
    bool scale_set = false;
    bool region_threshold_set = false;
    bool lv_set = false;
    bool mv_set = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(filename + ":" + std::to_string(line_no) +
                              ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "rssi_max") scale_set = true;
        if (key == "region_threshold") region_threshold_set = true;
        if (key == "lv_mv_bound") lv_set = true;
        if (key == "mv_hv_bound") mv_set = true;
        try {
            apply_config_entry(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(filename + ":" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    if (scale_set) {
        // Thresholds not pinned explicitly follow the vendor scale.
        const RssiConfig derived = default_rssi_config(cfg.experiment.scale);
        if (!lv_set) cfg.experiment.rssi.lv_mv_bound = derived.lv_mv_bound;
        if (!mv_set) cfg.experiment.rssi.mv_hv_bound = derived.mv_hv_bound;
        if (!region_threshold_set) {
            cfg.experiment.rssi.region_threshold = derived.region_threshold;
        }
    }
    if (cfg.experiment.min_len < 2 || cfg.experiment.min_len > cfg.experiment.max_len) {
        throw ConfigError("path length range must satisfy 2 <= min <= max");
    }
    if (cfg.experiment.rssi.noise_amplitude > cfg.experiment.rssi.delta_e) {
        throw ConfigError("noise_amplitude must not exceed delta_e");
    }
    if (cfg.experiment.rssi.lv_mv_bound >= cfg.experiment.rssi.mv_hv_bound ||
        cfg.experiment.rssi.lv_mv_bound < 0 ||
        cfg.experiment.rssi.mv_hv_bound > cfg.experiment.scale.rssi_max) {
        throw ConfigError(
            "signal levels need 0 <= lv_mv_bound < mv_hv_bound <= rssi_max");
    }
    return cfg;
}

}  // namespace ltdps

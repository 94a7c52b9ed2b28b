#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "ltdps/config.hpp"
#include "ltdps/eval.hpp"
#include "ltdps/miner.hpp"
#include "ltdps/mobility.hpp"
#include "ltdps/path.hpp"
#include "ltdps/security.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string config_key_footer() {
    std::ostringstream out;
    out << "Config file keys (flat key=value lines, '#' comments):\n";
    for (const auto& [key, help] : ltdps::AppConfig::key_help()) {
        out << "  " << std::left << std::setw(18) << key << help << '\n';
    }
    out << "Flags override config-file keys.";
    return out.str();
}

ltdps::AppConfig load_base_config(const std::string& config_file) {
    if (config_file.empty()) return ltdps::default_app_config();
    return ltdps::load_config_file(config_file);
}

int cmd_generate(const ltdps::AppConfig& cfg, const std::string& out_file) {
    const ltdps::GridTopology grid(cfg.experiment.ap_rows, cfg.experiment.ap_cols);
    // Same substream as the evaluation harness, so `generate --seed S`
    // reproduces the history that `eval --seed S` mines internally.
    ltdps::Rng rng = ltdps::Rng(cfg.experiment.seed).fork(1);
    std::vector<ltdps::MobilePath> paths;
    paths.reserve(static_cast<std::size_t>(cfg.experiment.history_size));
    for (int i = 0; i < cfg.experiment.history_size; ++i) {
        paths.push_back(ltdps::gen_region_path(grid, cfg.experiment.min_len,
                                               cfg.experiment.max_len, rng));
    }
    ltdps::save_path_history(out_file, paths);
    std::cout << paths.size() << " paths written to " << out_file << '\n';
    return kExitOk;
}

int cmd_predict(const ltdps::AppConfig& cfg, const std::string& history_file,
                int from_ap, int to_region) {
    const ltdps::GridTopology grid(cfg.experiment.ap_rows, cfg.experiment.ap_cols);
    if (!grid.ap_in_bounds(from_ap)) {
        throw std::out_of_range("--from AP id out of range");
    }
    if (!grid.region_in_bounds(to_region)) {
        throw std::out_of_range("--to-region id out of range");
    }

    ltdps::PatternDatabase db;
    std::size_t skipped = 0;
    for (const ltdps::MobilePath& path : ltdps::load_path_history(history_file)) {
        if (!db.record_path(path, grid)) ++skipped;
    }
    if (skipped > 0) {
        std::cerr << "warning: " << skipped << " invalid paths skipped\n";
    }
    std::cout << "history: " << db.path_count() << " paths\n";

    const auto candidates = grid.candidate_next_aps(from_ap, to_region);
    std::cout << "candidates S = {";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::cout << (i ? ", " : "") << candidates[i];
    }
    std::cout << "}\n";

    const auto prediction =
        ltdps::predict_next_ap(db, from_ap, candidates, cfg.experiment.scoring);
    if (!prediction) {
        std::cout << "no candidates: region " << to_region
                  << " is not reachable from AP " << from_ap << '\n';
        return kExitOk;
    }
    for (const ltdps::RankEntry& entry : prediction->rank_table) {
        std::cout << "  " << from_ap << "->" << entry.ap << "  score "
                  << entry.score << '\n';
    }
    std::cout << "predicted next AP: " << prediction->ap << '\n';
    return kExitOk;
}

int cmd_eval(const ltdps::AppConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);

    std::map<ltdps::Scheme, double> totals;
    for (int run = 0; run < cfg.runs; ++run) {
        ltdps::ExperimentConfig exp = cfg.experiment;
        exp.seed = cfg.experiment.seed + static_cast<std::uint64_t>(run);
        const ltdps::ExperimentReport report = ltdps::run_experiment(exp);

        const std::string suffix =
            cfg.runs == 1 ? "" : "_run" + std::to_string(run + 1);
        ltdps::write_report_csv(
            report, (fs::path(cfg.out_dir) / ("report" + suffix + ".csv")).string());
        ltdps::write_summary_csv(
            report, (fs::path(cfg.out_dir) / ("summary" + suffix + ".csv")).string());

        std::cout << "run " << run + 1 << " (seed " << exp.seed << "):";
        for (const ltdps::SchemeReport& sr : report.schemes) {
            totals[sr.scheme] += sr.mean_accuracy;
            std::cout << "  " << to_string(sr.scheme) << " " << std::fixed
                      << std::setprecision(1) << sr.mean_accuracy * 100.0 << "%";
        }
        std::cout << '\n';
    }
    std::cout << "mean accuracy over " << cfg.runs << " run(s):\n";
    for (const auto& [scheme, total] : totals) {
        std::cout << "  " << std::left << std::setw(6) << to_string(scheme)
                  << std::fixed << std::setprecision(1)
                  << total / cfg.runs * 100.0 << "%\n";
    }
    std::cout << "reports written to " << cfg.out_dir << '\n';
    return kExitOk;
}

int cmd_secure_demo(const std::string& key_hex, std::optional<int> tamper_bit,
                    bool replay, std::uint64_t seed) {
    ltdps::SharedKey key;
    try {
        key = ltdps::SharedKey::from_hex(key_hex);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    ltdps::HandshakeAttack attack;
    if (tamper_bit) attack.tamper = {{3, *tamper_bit}};  // message 3 carries the nonce
    attack.replay_report = replay;

    ltdps::Rng rng(seed);
    const std::vector<ltdps::Bytes> messages = {
        {'r', 's', 's', 'i', '1'}, {'r', 's', 's', 'i', '2'}, {'r', 's', 'v'}};
    const auto transcript = ltdps::run_handshake(7, key, messages, rng, attack);

    bool clean = true;
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        const ltdps::TranscriptEntry& entry = transcript[i];
        std::cout << i + 1 << ". " << entry.direction << "  " << std::left
                  << std::setw(34) << entry.label << " [" << entry.wire.size()
                  << " bytes]  " << to_string(entry.outcome) << '\n';
        if (entry.outcome != ltdps::VerifyOutcome::Accepted) clean = false;
    }
    std::cout << (clean ? "exchange completed, all packets accepted"
                        : "attack detected, connection refused")
              << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTDPS mobility-prediction toolkit: path generation, pattern "
                 "mining, next-AP prediction, baseline comparison and the "
                 "secured report exchange."};
    app.footer(config_key_footer());
    app.require_subcommand(1);

    std::string config_file;
    app.add_option("--config", config_file, "key=value config file")
        ->envname("LTDPS_CONFIG");

    auto* generate = app.add_subcommand("generate", "Generate a path-history file");
    std::string out_file = "history.txt";
    std::optional<int> count;
    std::optional<std::uint64_t> seed;
    generate->add_option("--out", out_file, "output file (one path per line)");
    generate->add_option("--count", count, "number of paths");
    generate->add_option("--seed", seed, "random seed");

    auto* predict = app.add_subcommand(
        "predict", "Predict the next AP for a node moving into a region");
    std::string history_file;
    int from_ap = 0;
    int to_region = 0;
    std::optional<double> corruption;
    predict->add_option("--history", history_file, "path-history file")->required();
    predict->add_option("--from", from_ap, "current AP id")->required();
    predict->add_option("--to-region", to_region, "region the node is entering")
        ->required();
    predict->add_option("--corruption-factor", corruption,
                        "indirect-count weight in [0,1]");

    auto* eval = app.add_subcommand("eval", "Run the prediction-accuracy experiment");
    std::optional<std::uint64_t> eval_seed;
    std::optional<int> eval_runs;
    std::optional<std::string> eval_out_dir;
    std::optional<std::string> eval_schemes;
    std::optional<int> eval_history;
    std::optional<int> eval_test_paths;
    eval->add_option("--seed", eval_seed, "random seed");
    eval->add_option("--runs", eval_runs, "independent seeded runs");
    eval->add_option("--out-dir", eval_out_dir, "directory for CSV reports");
    eval->add_option("--schemes", eval_schemes, "comma list of ltdps,tm,ip");
    eval->add_option("--history-size", eval_history, "paths in the mined history");
    eval->add_option("--test-paths", eval_test_paths, "paths in the test set");

    auto* demo = app.add_subcommand("secure-demo",
                                    "Run the secured report exchange");
    std::string key_hex = "0f1e2d3c4b5a6978";
    std::optional<int> tamper_bit;
    bool replay = false;
    std::uint64_t demo_seed = 1;
    demo->add_option("--key", key_hex, "shared key as hex bytes");
    demo->add_option("--tamper", tamper_bit,
                     "flip this bit of the third wire message");
    demo->add_flag("--replay", replay, "replay the nonce-bound report afterwards");
    demo->add_option("--seed", demo_seed, "random seed for nonces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        ltdps::AppConfig cfg = load_base_config(config_file);

        if (generate->parsed()) {
            if (count) {
                if (*count < 1) throw ltdps::ConfigError("--count must be >= 1");
                cfg.experiment.history_size = *count;
            }
            if (seed) cfg.experiment.seed = *seed;
            return cmd_generate(cfg, out_file);
        }
        if (predict->parsed()) {
            if (corruption) cfg.experiment.scoring.corruption_factor = *corruption;
            return cmd_predict(cfg, history_file, from_ap, to_region);
        }
        if (eval->parsed()) {
            if (eval_seed) cfg.experiment.seed = *eval_seed;
            if (eval_runs) cfg.runs = *eval_runs;
            if (eval_out_dir) cfg.out_dir = *eval_out_dir;
            if (eval_history) cfg.experiment.history_size = *eval_history;
            if (eval_test_paths) cfg.experiment.test_paths = *eval_test_paths;
            if (eval_schemes) {
                ltdps::apply_config_entry(cfg, "schemes", *eval_schemes);
            }
            return cmd_eval(cfg);
        }
        if (demo->parsed()) {
            return cmd_secure_demo(key_hex, tamper_bit, replay, demo_seed);
        }
    } catch (const ltdps::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

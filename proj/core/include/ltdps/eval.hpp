#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ltdps/baselines.hpp"
#include "ltdps/grid.hpp"
#include "ltdps/miner.hpp"
#include "ltdps/mobility.hpp"
#include "ltdps/rssi.hpp"

namespace ltdps {

enum class Scheme { LTDPS, TM, IP };

const char* to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(const std::string& name);

struct ExperimentConfig {
    std::uint64_t seed = 1;
    int history_size = 10000;
    int test_paths = 10;
    int min_len = 3;
    int max_len = 6;
    std::vector<Scheme> schemes = {Scheme::LTDPS, Scheme::TM, Scheme::IP};
    int ap_rows = 5;
    int ap_cols = 5;
    VendorScale scale;
    RssiConfig rssi;
    ScoringConfig scoring;
};

struct PredictedTransition {
    ApId predicted;
    ApId actual;
    int rank;  // 1-based position of the actual AP in the scheme's ranking
};

struct PathResult {
    MobilePath original;
    std::vector<PredictedTransition> predicted;  // one per transition
};

/// Fraction of transitions predicted correctly, in [0, 1].
double path_accuracy(const PathResult& result);

/// Display rounding to a whole percent.
int accuracy_percent(double fraction);

int error_count(const PathResult& result);

/// Largest rank over the path's transitions; 1 means every prediction hit.
int max_frequency_deviation(const PathResult& result);

/// Per-transition evaluation of one scheme over the test set. Every
/// prediction is conditioned on the actual previous AP (and, for the hybrid
/// scheme, the actual next region), so one miss does not cascade.
std::vector<PathResult> evaluate_scheme(Scheme scheme, const PatternDatabase& db,
                                        const TransitionMatrix& tm,
                                        const std::vector<MobilePath>& test_set,
                                        const GridTopology& grid,
                                        const ScoringConfig& scoring, Rng& rng);

struct SchemeReport {
    Scheme scheme;
    std::vector<PathResult> paths;
    double mean_accuracy = 0.0;  // mean of per-path fractions
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SchemeReport> schemes;
    long history_transitions = 0;
};

/// Full run: generate history and the test set (disjoint substreams of the
/// seed), build the pattern database and the transition matrix, evaluate
/// every configured scheme.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Original-path notation: "19->13->8".
std::string format_ap_sequence(const MobilePath& path);

/// Predicted-path notation: correct hops print the AP, misses print
/// "pred(actual,rank)".
std::string format_predicted_path(const PathResult& result);

/// Per-path rows: scheme, path_index, original_path, predicted_path,
/// accuracy_pct, error_count.
void write_report_csv(const ExperimentReport& report, std::ostream& out);
void write_report_csv(const ExperimentReport& report, const std::string& filename);

/// Per-scheme rows: scheme, mean_accuracy_pct, accuracy_per_path,
/// max_freq_deviation_per_path (semicolon-joined lists). The rank of an
/// unranked scheme (IP) is 1 on a hit, otherwise the neighbor count.
void write_summary_csv(const ExperimentReport& report, std::ostream& out);
void write_summary_csv(const ExperimentReport& report, const std::string& filename);

}  // namespace ltdps

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/path.hpp"

namespace ltdps {

struct ScoringConfig {
    double corruption_factor = 0.5;  // weight of the indirect (3-AP) counts
};

/// Frequency store over recorded mobile paths: direct counts for every
/// consecutive AP pair and indirect counts for every consecutive AP triple.
/// Counting is over the full path multiset, any position in the path.
/// Single-writer, many concurrent readers.
class PatternDatabase {
public:
    /// Validates the path against the grid and counts its pairs and triples.
    /// Returns false (database unchanged) for invalid or too-short input.
    bool record_path(const MobilePath& path, const GridTopology& grid);

    long direct_count(ApId from, ApId to) const;
    long indirect_count(ApId from, ApId via, ApId to) const;
    long path_count() const { return path_count_; }

    long total_direct() const;
    long total_indirect() const;

    /// Direct count injection, for calibration and test fixtures.
    void add_direct(ApId from, ApId to, long count);
    void add_indirect(ApId from, ApId via, ApId to, long count);

    const std::map<std::pair<ApId, ApId>, long>& direct_counts() const {
        return direct_;
    }

private:
    std::map<std::pair<ApId, ApId>, long> direct_;
    std::map<std::tuple<ApId, ApId, ApId>, long> indirect_;
    long path_count_ = 0;
};

struct RankEntry {
    ApId ap;
    double score;

    bool operator==(const RankEntry&) const = default;
};

struct Prediction {
    ApId ap;                           // highest score, ties to the lower id
    std::vector<RankEntry> rank_table; // all candidates, descending score
};

/// Candidate score: direct count plus the corruption factor times the sum of
/// indirect counts routed through the other candidates.
double score_candidate(const PatternDatabase& db, ApId from, ApId to,
                       const std::vector<ApId>& others, const ScoringConfig& cfg);

/// Next-AP choice over a candidate set: a singleton wins outright, two
/// candidates compare direct counts, three or more compare full scores.
/// Empty candidate sets have no prediction.
std::optional<Prediction> predict_next_ap(const PatternDatabase& db, ApId from,
                                          const std::vector<ApId>& candidates,
                                          const ScoringConfig& cfg);

/// Context-to-prediction rule: for a node at ap moving from_region to
/// to_region, the predicted attachment. valid stays unset until the actual
/// movement is known.
struct MobilityRule {
    ApId ap;
    RegionId from_region;
    RegionId to_region;
    ApId predicted_ap;
    std::optional<bool> valid;
};

std::optional<MobilityRule> generate_rule(const PatternDatabase& db, ApId ap,
                                          RegionId from_region, RegionId to_region,
                                          const GridTopology& grid,
                                          const ScoringConfig& cfg);

}  // namespace ltdps

#include "ltdps/miner.hpp"

#include <algorithm>

namespace ltdps {

bool PatternDatabase::record_path(const MobilePath& path, const GridTopology& grid) {
    if (path.size() < 2 || !path_valid(path, grid)) return false;
    for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
        ++direct_[{path.steps[i].ap, path.steps[i + 1].ap}];
    }
    for (std::size_t i = 0; i + 2 < path.steps.size(); ++i) {
        ++indirect_[{path.steps[i].ap, path.steps[i + 1].ap, path.steps[i + 2].ap}];
    }
    ++path_count_;
    return true;
}

long PatternDatabase::direct_count(ApId from, ApId to) const {
    const auto it = direct_.find({from, to});
    return it == direct_.end() ? 0 : it->second;
}

long PatternDatabase::indirect_count(ApId from, ApId via, ApId to) const {
    const auto it = indirect_.find({from, via, to});
    return it == indirect_.end() ? 0 : it->second;
}

long PatternDatabase::total_direct() const {
    long sum = 0;
    for (const auto& [key, count] : direct_) sum += count;
    return sum;
}

long PatternDatabase::total_indirect() const {
    long sum = 0;
    for (const auto& [key, count] : indirect_) sum += count;
    return sum;
}

void PatternDatabase::add_direct(ApId from, ApId to, long count) {
    direct_[{from, to}] += count;
}

void PatternDatabase::add_indirect(ApId from, ApId via, ApId to, long count) {
    indirect_[{from, via, to}] += count;
}

double score_candidate(const PatternDatabase& db, ApId from, ApId to,
                       const std::vector<ApId>& others, const ScoringConfig& cfg) {
    double score = static_cast<double>(db.direct_count(from, to));
    for (ApId via : others) {
        score += cfg.corruption_factor *
                 static_cast<double>(db.indirect_count(from, via, to));
    }
    return score;
}

std::optional<Prediction> predict_next_ap(const PatternDatabase& db, ApId from,
                                          const std::vector<ApId>& candidates,
                                          const ScoringConfig& cfg) {
    if (candidates.empty()) return std::nullopt;

    Prediction out;
    out.rank_table.reserve(candidates.size());
    for (ApId to : candidates) {
        double score;
        if (candidates.size() <= 2) {
            // One or two candidates: the direct counts decide.
            score = static_cast<double>(db.direct_count(from, to));
        } else {
            std::vector<ApId> others;
            for (ApId other : candidates) {
                if (other != to) others.push_back(other);
            }
            score = score_candidate(db, from, to, others, cfg);
        }
        out.rank_table.push_back({to, score});
    }
    std::stable_sort(out.rank_table.begin(), out.rank_table.end(),
                     [](const RankEntry& a, const RankEntry& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.ap < b.ap;
                     });
    out.ap = out.rank_table.front().ap;
    return out;
}

std::optional<MobilityRule> generate_rule(const PatternDatabase& db, ApId ap,
                                          RegionId from_region, RegionId to_region,
                                          const GridTopology& grid,
                                          const ScoringConfig& cfg) {
    if (!grid.regions_adjacent(from_region, to_region)) return std::nullopt;
    const std::vector<ApId> candidates = grid.candidate_next_aps(ap, to_region);
    const auto prediction = predict_next_ap(db, ap, candidates, cfg);
    if (!prediction) return std::nullopt;
    return MobilityRule{ap, from_region, to_region, prediction->ap, std::nullopt};
}

}  // namespace ltdps

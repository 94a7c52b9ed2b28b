#include "ltdps/tracker.hpp"

#include <algorithm>
#include <cmath>

namespace ltdps {

namespace {

ApId strongest_ap(const RssiSample& sample) {
    // Samples are kept sorted descending with ascending-id tie break.
    return sample.readings.front().ap;
}

std::optional<RegionId> best_mean_region(const RssiSample& sample,
                                         const GridTopology& grid) {
    std::optional<RegionId> best;
    double best_score = 0.0;
    int best_size = 0;
    for (RegionId region = 0; region < grid.region_count(); ++region) {
        const std::vector<ApId> aps = grid.region_aps(region);
        double sum = 0.0;
        for (ApId ap : aps) {
            if (const auto r = sample.reading_for(ap)) sum += *r;
        }
        const double score = sum / static_cast<double>(aps.size());
        const int size = static_cast<int>(aps.size());
        if (score <= 0.0) continue;
        if (!best || score > best_score ||
            (score == best_score && (size > best_size ||
                                     (size == best_size && region < *best)))) {
            best = region;
            best_score = score;
            best_size = size;
        }
    }
    return best;
}

}  // namespace

std::optional<LocateResult> locate_region(const RssiSample& sample,
                                          const GridTopology& grid,
                                          const RssiConfig& cfg) {
    if (sample.readings.empty()) return std::nullopt;

    std::vector<ApId> above;
    for (const Reading& r : sample.readings) {
        if (r.rssi >= cfg.region_threshold) above.push_back(r.ap);
    }

    std::optional<RegionId> region;
    if (above.size() == 1 || above.size() == 2 || above.size() == 4) {
        region = grid.region_of(above);
    } else if (above.size() == 3 && sample.readings.size() == 4) {
        // Interior cell with one reading dipping under the threshold: impute
        // the fourth sampled AP.
        std::vector<ApId> all;
        for (const Reading& r : sample.readings) all.push_back(r.ap);
        region = grid.region_of(all);
    }
    if (region) {
        return LocateResult{*region, strongest_ap(sample)};
    }
    region = best_mean_region(sample, grid);
    if (!region) return std::nullopt;
    // Fallback association: the strongest reading that belongs to the
    // decoded region, so the (AP, region) pair stays consistent.
    const std::vector<ApId> aps = grid.region_aps(*region);
    for (const Reading& r : sample.readings) {
        if (std::find(aps.begin(), aps.end(), r.ap) != aps.end()) {
            return LocateResult{*region, r.ap};
        }
    }
    return LocateResult{*region, strongest_ap(sample)};
}

Motion detect_motion(const RssiSample& prev, const RssiSample& cur,
                     const RssiConfig& cfg) {
    auto ap_set = [](const RssiSample& s) {
        std::vector<ApId> ids;
        for (const Reading& r : s.readings) ids.push_back(r.ap);
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    if (ap_set(prev) != ap_set(cur)) return Motion::Moving;
    for (const Reading& r : cur.readings) {
        const auto old = prev.reading_for(r.ap);
        if (old && !similar(*old, r.rssi, cfg)) return Motion::Moving;
    }
    return Motion::Stationary;
}

DirectionReading infer_direction(const RssiSample& sample, const RssiConfig& cfg) {
    DirectionReading out;
    if (sample.readings.size() != 4) return out;

    int lv = 0, mv = 0, hv = 0;
    for (const Reading& r : sample.readings) {
        switch (classify_level(r.rssi, cfg)) {
            case SignalLevel::LV: ++lv; break;
            case SignalLevel::MV: ++mv; break;
            case SignalLevel::HV: ++hv; break;
        }
    }
    auto collect_hv = [&]() {
        for (const Reading& r : sample.readings) {
            if (classify_level(r.rssi, cfg) == SignalLevel::HV) {
                out.toward.push_back(r.ap);
            }
        }
        std::sort(out.toward.begin(), out.toward.end());
    };
    if (mv == 4) {
        out.pattern = DirectionPattern::MiddleOfRegion;
    } else if (lv == 2 && hv == 2) {
        out.pattern = DirectionPattern::TowardPair;
        collect_hv();
    } else if (lv == 3 && hv == 1) {
        out.pattern = DirectionPattern::TowardSingle;
        collect_hv();
    }
    return out;
}

std::optional<RegionId> predict_region(const TrackState& state,
                                       const DirectionReading& reading,
                                       const GridTopology& grid) {
    if (reading.toward.empty()) return std::nullopt;
    std::optional<RegionId> best;
    std::size_t best_hits = 0;
    for (RegionId region : grid.region_neighbors(state.current_region)) {
        const std::vector<ApId> aps = grid.region_aps(region);
        std::size_t hits = 0;
        for (ApId ap : reading.toward) {
            if (std::find(aps.begin(), aps.end(), ap) != aps.end()) ++hits;
        }
        if (hits == 0) continue;
        if (!best || hits > best_hits) {  // equal hits keep the lower id
            best = region;
            best_hits = hits;
        }
    }
    return best;
}

bool should_handoff(const TrackState& state, const RssiSample& cur_sample,
                    ApId next_ap, const RssiConfig& cfg) {
    const int next_rssi = cur_sample.reading_for(next_ap).value_or(0);
    const int cur_rssi = cur_sample.reading_for(state.current_ap).value_or(0);
    const auto last = state.last_sample.reading_for(state.current_ap);

    const bool diminishing = last && (*last - cur_rssi) > cfg.delta_e;
    if (next_rssi >= cfg.region_threshold && diminishing) return true;

    // Tied strongest readings plus a weak current AP: the node is leaving
    // but the winner is ambiguous, so the mining prediction decides where.
    if (cur_sample.readings.size() >= 2) {
        const Reading& first = cur_sample.readings[0];
        const Reading& second = cur_sample.readings[1];
        if (similar(first.rssi, second.rssi, cfg) &&
            cur_rssi < cfg.region_threshold) {
            return true;
        }
    }
    return false;
}

}  // namespace ltdps

#pragma once

#include <optional>
#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/rssi.hpp"

namespace ltdps {

enum class Motion { Stationary, Moving };

/// Per-node tracking state held by the prediction server. Single-writer:
/// one logical event loop updates one node's state.
struct TrackState {
    int mn_id = 0;
    ApId current_ap = 0;
    RegionId current_region = 0;
    RssiSample last_sample;
    Motion motion = Motion::Stationary;
    int sample_streak = 0;  // consecutive similar samples
};

enum class DirectionPattern {
    MiddleOfRegion,  // {MV, MV, MV, MV}
    TowardPair,      // {LV, LV, HV, HV}
    TowardSingle,    // {LV, LV, LV, HV}
    Other,
};

struct DirectionReading {
    DirectionPattern pattern = DirectionPattern::Other;
    std::vector<ApId> toward;  // APs the node is moving toward, ascending
};

struct LocateResult {
    RegionId region;
    ApId ap;  // strongest reading, the node's association
};

/// Region identification from a sample: readings at or above the region
/// threshold mark the region's own APs (4 = interior cell, 2 = border,
/// 1 = corner; 3 is treated as an interior cell with the weakest reading
/// imputed). When the marked set matches no region, falls back to the
/// region whose AP set carries the strongest mean reading (ties prefer
/// larger then lower-id regions). Empty or all-zero samples cannot be
/// located.
std::optional<LocateResult> locate_region(const RssiSample& sample,
                                          const GridTopology& grid,
                                          const RssiConfig& cfg);

/// Moving when the sampled AP set changed or any shared reading moved by
/// more than the error factor.
Motion detect_motion(const RssiSample& prev, const RssiSample& cur,
                     const RssiConfig& cfg);

DirectionReading infer_direction(const RssiSample& sample, const RssiConfig& cfg);

/// The adjacent region whose AP set best matches the direction reading.
/// Ties break toward the lower region id; no directional evidence or no
/// matching neighbor region is indecisive (use the mining path instead).
std::optional<RegionId> predict_region(const TrackState& state,
                                       const DirectionReading& reading,
                                       const GridTopology& grid);

/// Handoff is due when the next AP reads at or above the region threshold
/// while the current AP's reading dropped by more than the error factor, or
/// when the two strongest readings are tied within the error factor and the
/// current AP is weak.
bool should_handoff(const TrackState& state, const RssiSample& cur_sample,
                    ApId next_ap, const RssiConfig& cfg);

}  // namespace ltdps

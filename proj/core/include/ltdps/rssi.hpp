#pragma once

#include <optional>
#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/random.hpp"

namespace ltdps {

/// Vendor-specific top of the RSSI scale. Readings are integers in
/// [0, rssi_max].
struct VendorScale {
    int rssi_max = 100;

    static VendorScale cisco() { return {100}; }
    static VendorScale symbol() { return {31}; }
    static VendorScale atheros() { return {60}; }
};

enum class SignalLevel { LV, MV, HV };

struct Reading {
    ApId ap;
    int rssi;

    bool operator==(const Reading&) const = default;
};

/// One measurement: up to four (AP, RSSI) pairs sorted by descending RSSI
/// (ties by ascending AP id), stamped with the sampling tick.
struct RssiSample {
    std::vector<Reading> readings;
    long tick = 0;

    std::optional<int> reading_for(ApId ap) const;
    bool operator==(const RssiSample&) const = default;
};

struct RssiConfig {
    int delta_e = 5;           // error factor: readings within delta_e count equal
    int delta_t = 1;           // sampling interval in ticks
    int region_threshold = 34; // readings at or above it mark a region's own APs
    int lv_mv_bound = 34;      // level < bound  -> LV
    int mv_hv_bound = 67;      // level >= bound -> HV
    int noise_amplitude = 2;   // uniform noise range, must stay <= delta_e
    double range = 1.75;       // propagation radius in region widths
};

/// Thresholds at the tertiles of the vendor scale, region threshold at the
/// LV/MV bound.
RssiConfig default_rssi_config(const VendorScale& scale);

/// Linear-falloff synthetic reading: rssi_max at the AP, zero at cfg.range,
/// plus uniform integer noise in [-noise_amplitude, +noise_amplitude],
/// clamped to the vendor scale. Keeps the four strongest readings.
RssiSample synthesize_sample(double x, double y, const GridTopology& grid,
                             const VendorScale& scale, const RssiConfig& cfg,
                             Rng& rng, long tick = 0);

SignalLevel classify_level(int value, const RssiConfig& cfg);

/// Readings a and b count as the same value within the error factor.
/// Reflexive and symmetric, not transitive.
bool similar(int a, int b, const RssiConfig& cfg);

}  // namespace ltdps

#include "ltdps/rssi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ltdps {

std::optional<int> RssiSample::reading_for(ApId ap) const {
    for (const Reading& r : readings) {
        if (r.ap == ap) return r.rssi;
    }
    return std::nullopt;
}

RssiConfig default_rssi_config(const VendorScale& scale) {
    RssiConfig cfg;
    cfg.lv_mv_bound = (scale.rssi_max + 2) / 3;
    cfg.mv_hv_bound = (2 * scale.rssi_max + 2) / 3;
    cfg.region_threshold = cfg.lv_mv_bound;
    return cfg;
}

RssiSample synthesize_sample(double x, double y, const GridTopology& grid,
                             const VendorScale& scale, const RssiConfig& cfg,
                             Rng& rng, long tick) {
    RssiSample sample;
    sample.tick = tick;
    sample.readings.reserve(grid.ap_count());
    for (ApId ap = 0; ap < grid.ap_count(); ++ap) {
        const auto [ax, ay] = grid.ap_position(ap);
        const double dist = std::hypot(x - ax, y - ay);
        const double base = scale.rssi_max * std::max(0.0, 1.0 - dist / cfg.range);
        int value = static_cast<int>(std::lround(base));
        if (cfg.noise_amplitude > 0) {
            value += rng.uniform_int(-cfg.noise_amplitude, cfg.noise_amplitude);
        }
        value = std::clamp(value, 0, scale.rssi_max);
        sample.readings.push_back({ap, value});
    }
    std::stable_sort(sample.readings.begin(), sample.readings.end(),
                     [](const Reading& a, const Reading& b) {
                         if (a.rssi != b.rssi) return a.rssi > b.rssi;
                         return a.ap < b.ap;
                     });
    if (sample.readings.size() > 4) sample.readings.resize(4);
    return sample;
}

SignalLevel classify_level(int value, const RssiConfig& cfg) {
    if (value < cfg.lv_mv_bound) return SignalLevel::LV;
    if (value >= cfg.mv_hv_bound) return SignalLevel::HV;
    return SignalLevel::MV;
}

bool similar(int a, int b, const RssiConfig& cfg) {
    return std::abs(a - b) <= cfg.delta_e;
}

}  // namespace ltdps

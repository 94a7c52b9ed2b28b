#pragma once

#include <cstdint>
#include <random>

namespace ltdps {

/// Seeded random source. Every stochastic operation takes one of these
/// explicitly, so a run is reproducible from its seed alone. fork() derives
/// an independent substream from the original seed (not the engine state),
/// which keeps parallel stages decoupled from each other's draw counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    Rng fork(std::uint64_t tag) const {
        return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1))));
    }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gaussian(double mean, double sigma) {
        return std::normal_distribution<double>(mean, sigma)(engine_);
    }

    std::uint8_t byte() {
        return static_cast<std::uint8_t>(engine_() & 0xff);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ltdps

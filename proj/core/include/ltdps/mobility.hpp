#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/path.hpp"
#include "ltdps/random.hpp"
#include "ltdps/rssi.hpp"

namespace ltdps {

/// Continuous 2-D motion state: position, speed (>= 0) and heading in
/// radians, normalized to [0, 2*pi).
struct KinematicState {
    double x = 0.0;
    double y = 0.0;
    double v = 0.0;
    double theta = 0.0;
};

struct AreaBounds {
    double width;
    double height;
};

/// Torus-area model parameters: speed changes are uniform within the
/// acceleration budget and heading changes within the angular-rate budget,
/// both scaled by the time step.
struct BoundlessParams {
    double v_max = 2.0;
    double a_max = 0.5;
    double max_angular_change = 0.5;  // radians per time unit
    double dt = 1.0;
};

struct GaussMarkovParams {
    double alpha = 0.75;        // 0 = memoryless, 1 = linear motion
    double mean_speed = 1.0;
    double mean_direction = 0.0;
    double speed_sigma = 1.0;
    double direction_sigma = 0.5;
    double edge_margin_fraction = 0.1;  // edge band that steers back to center
};

/// Row-stochastic 3x3 transition matrix over per-axis states
/// {0: hold, 1: step back, 2: step forward}.
struct WalkStateMatrix {
    std::array<std::array<double, 3>, 3> p;

    /// Chiang's published transition values.
    static WalkStateMatrix chiang_default();

    bool row_stochastic(double tol = 1e-12) const;
};

struct WalkAxisState {
    int x = 0;  // in {0, 1, 2}
    int y = 0;
};

struct WaypointParams {
    double min_speed = 0.5;
    double max_speed = 2.0;
    int pause_ticks = 3;
};

struct WalkParams {
    double min_speed = 0.5;
    double max_speed = 2.0;
    int leg_ticks = 10;  // ticks between random direction/speed changes
};

struct DirectionParams {
    double min_speed = 0.5;
    double max_speed = 2.0;
    int pause_ticks = 3;
};

/// One torus-model step: speed and heading get uniform perturbations, the
/// position advances with the pre-update speed and heading and wraps
/// modulo the area dimensions.
KinematicState step_boundless(const KinematicState& state,
                              const BoundlessParams& params,
                              const AreaBounds& area, Rng& rng);

/// One memory-weighted step: position advances with the previous speed and
/// direction, then both are pulled toward their means with Gaussian
/// perturbation scaled by sqrt(1 - alpha^2). Inside the edge band the mean
/// direction is replaced by the bearing to the area center.
KinematicState step_gauss_markov(const KinematicState& state,
                                 const GaussMarkovParams& params,
                                 const AreaBounds& area, Rng& rng);

/// One probabilistic-walk step: the x and y states transition independently
/// through the matrix; returns the new states and the (dx, dy) displacement
/// (state 1 -> -step_len, state 2 -> +step_len, state 0 -> none).
std::pair<WalkAxisState, std::pair<double, double>> step_prob_walk(
    const WalkAxisState& state, const WalkStateMatrix& matrix, double step_len,
    Rng& rng);

std::vector<KinematicState> gen_waypoint_trajectory(const WaypointParams& params,
                                                    const AreaBounds& area,
                                                    int steps, Rng& rng);

std::vector<KinematicState> gen_walk_trajectory(const WalkParams& params,
                                                const AreaBounds& area,
                                                int steps, Rng& rng);

std::vector<KinematicState> gen_direction_trajectory(const DirectionParams& params,
                                                     const AreaBounds& area,
                                                     int steps, Rng& rng);

/// Projects a continuous trajectory onto the discrete path space: the node
/// associates with the nearest corner AP of its current region and a new
/// step is recorded whenever the association changes (with delta_e
/// hysteresis so boundary jitter does not flap). Consecutive samples are
/// interpolated so no region is skipped. The result satisfies the
/// MobilePath validity rules.
MobilePath trajectory_to_path(const std::vector<KinematicState>& trajectory,
                              const GridTopology& grid, const RssiConfig& cfg);

/// Random region-level path: the start AP is uniform over all APs (start
/// region uniform over the regions that touch it), each later step moves to
/// an adjacent region and one of its admissible next APs, never undoing the
/// previous AP transition. Length is uniform in [min_len, max_len].
MobilePath gen_region_path(const GridTopology& grid, int min_len, int max_len,
                           Rng& rng);

}  // namespace ltdps

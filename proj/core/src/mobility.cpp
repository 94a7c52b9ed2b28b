#include "ltdps/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ltdps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    return theta;
}

double wrap_coord(double v, double limit) {
    v = std::fmod(v, limit);
    if (v < 0.0) v += limit;
    return v;
}

double clamp_coord(double v, double limit) {
    return std::clamp(v, 0.0, std::nextafter(limit, 0.0));
}

}  // namespace

WalkStateMatrix WalkStateMatrix::chiang_default() {
    return {{{{0.0, 0.5, 0.5}, {0.3, 0.7, 0.0}, {0.3, 0.0, 0.7}}}};
}

bool WalkStateMatrix::row_stochastic(double tol) const {
    for (const auto& row : p) {
        double sum = 0.0;
        for (double v : row) {
            if (v < 0.0 || v > 1.0) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

KinematicState step_boundless(const KinematicState& state,
                              const BoundlessParams& params,
                              const AreaBounds& area, Rng& rng) {
    if (params.v_max < 0.0 || params.a_max < 0.0 || params.dt <= 0.0 ||
        params.max_angular_change < 0.0) {
        throw std::invalid_argument("boundless params must be non-negative");
    }
    const double dv =
        rng.uniform(-params.a_max * params.dt, params.a_max * params.dt);
    const double dtheta = rng.uniform(-params.max_angular_change * params.dt,
                                      params.max_angular_change * params.dt);
    KinematicState next;
    // The position update uses the pre-update velocity vector; the new speed
    // is clamped into [0, v_max].
    next.x = wrap_coord(state.x + state.v * std::cos(state.theta), area.width);
    next.y = wrap_coord(state.y + state.v * std::sin(state.theta), area.height);
    next.v = std::min(std::max(state.v + dv, 0.0), params.v_max);
    next.theta = wrap_angle(state.theta + dtheta);
    return next;
}

KinematicState step_gauss_markov(const KinematicState& state,
                                 const GaussMarkovParams& params,
                                 const AreaBounds& area, Rng& rng) {
    if (params.alpha < 0.0 || params.alpha > 1.0) {
        throw std::invalid_argument("alpha must be in [0, 1]");
    }
    if (params.speed_sigma < 0.0 || params.direction_sigma < 0.0) {
        throw std::invalid_argument("sigmas must be non-negative");
    }
    KinematicState next;
    next.x = clamp_coord(state.x + state.v * std::cos(state.theta), area.width);
    next.y = clamp_coord(state.y + state.v * std::sin(state.theta), area.height);

    // Near an edge the mean direction points back at the area center so the
    // node does not linger along the border.
    double mean_dir = params.mean_direction;
    const double mx = params.edge_margin_fraction * area.width;
    const double my = params.edge_margin_fraction * area.height;
    if (next.x < mx || next.x > area.width - mx || next.y < my ||
        next.y > area.height - my) {
        mean_dir = std::atan2(area.height / 2.0 - next.y, area.width / 2.0 - next.x);
    }

    const double memory = params.alpha;
    const double drift = 1.0 - params.alpha;
    const double swing = std::sqrt(1.0 - params.alpha * params.alpha);
    const double speed_noise =
        swing == 0.0 ? 0.0 : swing * rng.gaussian(0.0, params.speed_sigma);
    const double dir_noise =
        swing == 0.0 ? 0.0 : swing * rng.gaussian(0.0, params.direction_sigma);
    // With alpha == 1 the memory term must survive bit-exactly, so the drift
    // and noise terms are skipped rather than multiplied by zero.
    next.v = memory == 1.0 ? state.v
                           : memory * state.v + drift * params.mean_speed + speed_noise;
    next.v = std::max(next.v, 0.0);
    next.theta = memory == 1.0
                     ? state.theta
                     : wrap_angle(memory * state.theta + drift * mean_dir + dir_noise);
    return next;
}

std::pair<WalkAxisState, std::pair<double, double>> step_prob_walk(
    const WalkAxisState& state, const WalkStateMatrix& matrix, double step_len,
    Rng& rng) {
    if (!matrix.row_stochastic(1e-9)) {
        throw std::invalid_argument("walk matrix rows must each sum to 1");
    }
    auto transition = [&](int from) {
        const auto& row = matrix.p[static_cast<std::size_t>(from)];
        const double draw = rng.uniform(0.0, 1.0);
        if (draw < row[0]) return 0;
        if (draw < row[0] + row[1]) return 1;
        return 2;
    };
    auto displacement = [step_len](int s) {
        if (s == 1) return -step_len;
        if (s == 2) return step_len;
        return 0.0;
    };
    WalkAxisState next;
    next.x = transition(state.x);
    next.y = transition(state.y);
    return {next, {displacement(next.x), displacement(next.y)}};
}

std::vector<KinematicState> gen_waypoint_trajectory(const WaypointParams& params,
                                                    const AreaBounds& area,
                                                    int steps, Rng& rng) {
    if (area.width <= 0.0 || area.height <= 0.0) {
        throw std::invalid_argument("empty simulation area");
    }
    if (params.min_speed > params.max_speed || params.min_speed < 0.0 ||
        params.pause_ticks < 0) {
        throw std::invalid_argument("bad waypoint params");
    }
    std::vector<KinematicState> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 0)));

    KinematicState cur;
    cur.x = rng.uniform(0.0, area.width);
    cur.y = rng.uniform(0.0, area.height);
    int pause_left = params.pause_ticks;
    double dest_x = cur.x, dest_y = cur.y;

    while (static_cast<int>(out.size()) < steps) {
        if (pause_left > 0) {
            cur.v = 0.0;
            out.push_back(cur);
            --pause_left;
            continue;
        }
        const double remaining = std::hypot(dest_x - cur.x, dest_y - cur.y);
        if (remaining < 1e-9) {
            dest_x = rng.uniform(0.0, area.width);
            dest_y = rng.uniform(0.0, area.height);
            cur.v = rng.uniform(params.min_speed, params.max_speed);
            cur.theta = wrap_angle(std::atan2(dest_y - cur.y, dest_x - cur.x));
            pause_left = 0;
            continue;
        }
        const double hop = std::min(cur.v, remaining);
        cur.x += hop * std::cos(cur.theta);
        cur.y += hop * std::sin(cur.theta);
        if (std::hypot(dest_x - cur.x, dest_y - cur.y) < 1e-9) {
            cur.x = dest_x;
            cur.y = dest_y;
            pause_left = params.pause_ticks;
        }
        out.push_back(cur);
    }
    return out;
}

std::vector<KinematicState> gen_walk_trajectory(const WalkParams& params,
                                                const AreaBounds& area,
                                                int steps, Rng& rng) {
    if (area.width <= 0.0 || area.height <= 0.0) {
        throw std::invalid_argument("empty simulation area");
    }
    if (params.min_speed > params.max_speed || params.leg_ticks < 1) {
        throw std::invalid_argument("bad walk params");
    }
    std::vector<KinematicState> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 0)));

    KinematicState cur;
    cur.x = rng.uniform(0.0, area.width);
    cur.y = rng.uniform(0.0, area.height);
    cur.v = rng.uniform(params.min_speed, params.max_speed);
    cur.theta = rng.uniform(0.0, kTwoPi);
    int leg_left = params.leg_ticks;

    while (static_cast<int>(out.size()) < steps) {
        if (leg_left == 0) {
            cur.v = rng.uniform(params.min_speed, params.max_speed);
            cur.theta = rng.uniform(0.0, kTwoPi);
            leg_left = params.leg_ticks;
        }
        double nx = cur.x + cur.v * std::cos(cur.theta);
        double ny = cur.y + cur.v * std::sin(cur.theta);
        // Mirror reflection off the border, preserving the incoming angle.
        if (nx < 0.0 || nx > area.width) {
            nx = nx < 0.0 ? -nx : 2.0 * area.width - nx;
            cur.theta = wrap_angle(std::numbers::pi - cur.theta);
        }
        if (ny < 0.0 || ny > area.height) {
            ny = ny < 0.0 ? -ny : 2.0 * area.height - ny;
            cur.theta = wrap_angle(-cur.theta);
        }
        cur.x = clamp_coord(nx, area.width);
        cur.y = clamp_coord(ny, area.height);
        out.push_back(cur);
        --leg_left;
    }
    return out;
}

std::vector<KinematicState> gen_direction_trajectory(const DirectionParams& params,
                                                     const AreaBounds& area,
                                                     int steps, Rng& rng) {
    if (area.width <= 0.0 || area.height <= 0.0) {
        throw std::invalid_argument("empty simulation area");
    }
    if (params.min_speed > params.max_speed || params.pause_ticks < 0) {
        throw std::invalid_argument("bad direction params");
    }
    std::vector<KinematicState> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 0)));

    KinematicState cur;
    cur.x = rng.uniform(0.0, area.width);
    cur.y = rng.uniform(0.0, area.height);
    int pause_left = 0;
    bool traveling = false;

    auto pick_inward_direction = [&]() {
        for (;;) {
            const double theta = rng.uniform(0.0, kTwoPi);
            const double dx = std::cos(theta), dy = std::sin(theta);
            const double probe_x = cur.x + 1e-6 * dx;
            const double probe_y = cur.y + 1e-6 * dy;
            if (probe_x >= 0.0 && probe_x <= area.width && probe_y >= 0.0 &&
                probe_y <= area.height) {
                return theta;
            }
        }
    };

    while (static_cast<int>(out.size()) < steps) {
        if (pause_left > 0) {
            cur.v = 0.0;
            out.push_back(cur);
            --pause_left;
            continue;
        }
        if (!traveling) {
            cur.v = rng.uniform(params.min_speed, params.max_speed);
            cur.theta = pick_inward_direction();
            traveling = true;
        }
        double nx = cur.x + cur.v * std::cos(cur.theta);
        double ny = cur.y + cur.v * std::sin(cur.theta);
        if (nx < 0.0 || nx > area.width || ny < 0.0 || ny > area.height) {
            // Stop exactly on the border along the travel direction.
            double t = 1.0;
            const double dx = nx - cur.x, dy = ny - cur.y;
            if (dx > 0.0) t = std::min(t, (area.width - cur.x) / dx);
            if (dx < 0.0) t = std::min(t, (0.0 - cur.x) / dx);
            if (dy > 0.0) t = std::min(t, (area.height - cur.y) / dy);
            if (dy < 0.0) t = std::min(t, (0.0 - cur.y) / dy);
            cur.x = std::clamp(cur.x + t * dx, 0.0, area.width);
            cur.y = std::clamp(cur.y + t * dy, 0.0, area.height);
            // Snap the binding coordinate onto the border despite rounding.
            if (std::abs(cur.x) < 1e-9) cur.x = 0.0;
            if (std::abs(cur.x - area.width) < 1e-9) cur.x = area.width;
            if (std::abs(cur.y) < 1e-9) cur.y = 0.0;
            if (std::abs(cur.y - area.height) < 1e-9) cur.y = area.height;
            traveling = false;
            pause_left = params.pause_ticks;
            cur.v = 0.0;
        } else {
            cur.x = nx;
            cur.y = ny;
        }
        out.push_back(cur);
    }
    return out;
}

namespace {

struct Association {
    ApId ap;
    RegionId region;
};

// Nearest corner AP of the region that contains (x, y), restricted to the
// current association's lattice neighborhood so a path only ever walks the
// adjacency graph. Ties go to the lower AP id.
std::optional<Association> associate(double x, double y, const GridTopology& grid,
                                     const RssiConfig& cfg,
                                     const std::optional<Association>& current) {
    const auto region = grid.region_at_position(x, y);
    if (!region) return std::nullopt;
    std::optional<Association> best;
    double best_dist = 0.0;
    double current_dist = -1.0;
    for (ApId ap : grid.region_aps(*region)) {
        const auto [ax, ay] = grid.ap_position(ap);
        const double dist = std::hypot(x - ax, y - ay);
        if (current && ap == current->ap) current_dist = dist;
        if (current && ap != current->ap && !grid.aps_adjacent(current->ap, ap)) {
            continue;
        }
        if (!best || dist < best_dist) {
            best = Association{ap, *region};
            best_dist = dist;
        }
    }
    if (!best) {
        // No admissible corner here; hold the association until one appears.
        return current;
    }
    if (current && best->ap != current->ap && current_dist >= 0.0) {
        // Hysteresis: re-associate only when the gain is worth more than the
        // error factor (delta_e readings on a 0..100 scale = delta_e/100 of
        // the propagation range).
        const double margin = cfg.delta_e * cfg.range / 100.0;
        if (current_dist - best_dist <= margin) {
            return Association{current->ap, *region};
        }
    }
    return best;
}

}  // namespace

MobilePath trajectory_to_path(const std::vector<KinematicState>& trajectory,
                              const GridTopology& grid, const RssiConfig& cfg) {
    if (trajectory.empty()) {
        throw std::invalid_argument("trajectory must not be empty");
    }
    MobilePath path;
    std::optional<Association> assoc;
    constexpr double kResolution = 0.05;

    auto visit = [&](double x, double y) {
        const auto next = associate(x, y, grid, cfg, assoc);
        if (!next) {
            throw std::domain_error("trajectory leaves the simulation area");
        }
        if (!assoc || next->ap != assoc->ap) {
            // A new association is one path step; the region is the cell the
            // node was in when it switched.
            path.steps.push_back({next->ap, next->region});
            assoc = next;
        } else {
            assoc->region = next->region;
        }
    };

    visit(trajectory.front().x, trajectory.front().y);
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        const auto& a = trajectory[i - 1];
        const auto& b = trajectory[i];
        const double dist = std::hypot(b.x - a.x, b.y - a.y);
        const int pieces = std::max(1, static_cast<int>(std::ceil(dist / kResolution)));
        for (int k = 1; k <= pieces; ++k) {
            const double t = static_cast<double>(k) / pieces;
            visit(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        }
    }
    return path;
}

namespace {

// Compass order; turning +-1 is a 45-degree deviation, +-2 is 90 degrees.
constexpr std::array<std::pair<int, int>, 8> kCompass = {{{-1, 0},
                                                          {-1, 1},
                                                          {0, 1},
                                                          {1, 1},
                                                          {1, 0},
                                                          {1, -1},
                                                          {0, -1},
                                                          {-1, -1}}};

// The cell whose bottom-right corner is this AP: region (r, c) for AP (r, c).
// Paths record the node's cell at association time under that convention.
RegionId co_region(const GridTopology& grid, ApId ap) {
    return grid.region_at(grid.ap_row(ap), grid.ap_col(ap));
}

}  // namespace

MobilePath gen_region_path(const GridTopology& grid, int min_len, int max_len,
                           Rng& rng) {
    if (min_len < 2 || min_len > max_len) {
        throw std::invalid_argument("path length range must satisfy 2 <= min <= max");
    }
    if (grid.ap_count() < 2) {
        throw std::invalid_argument("path generation needs at least two APs");
    }
    const int target_len = rng.uniform_int(min_len, max_len);

    // Persistent-heading lattice walk: the node keeps its compass heading,
    // occasionally deviating 45 or 90 degrees, and slides along the border
    // when the heading points off the grid. Directions never flip outright,
    // so a path cannot undo its previous hop.
    constexpr double kTurn45 = 0.12;
    constexpr double kTurn90 = 0.06;

    MobilePath path;
    const ApId start_ap =
        static_cast<ApId>(rng.uniform_index(static_cast<std::size_t>(grid.ap_count())));
    path.steps.push_back({start_ap, co_region(grid, start_ap)});
    int heading = static_cast<int>(rng.uniform_index(kCompass.size()));

    // Heading clamped to the grid: off-grid components drop out (border
    // slide). Returns the AP one step away, or -1 when fully blocked.
    auto slide = [&](ApId from, int h) -> ApId {
        const auto [dr, dc] = kCompass[static_cast<std::size_t>(h)];
        int r = grid.ap_row(from) + dr;
        int c = grid.ap_col(from) + dc;
        if (r < 0 || r >= grid.ap_rows()) r = grid.ap_row(from);
        if (c < 0 || c >= grid.ap_cols()) c = grid.ap_col(from);
        const ApId to = grid.ap_at(r, c);
        return to == from ? -1 : to;
    };

    while (static_cast<int>(path.steps.size()) < target_len) {
        const ApId cur = path.steps.back().ap;
        const ApId prev =
            path.steps.size() >= 2 ? path.steps[path.steps.size() - 2].ap : -1;

        int h = heading;
        const double draw = rng.uniform(0.0, 1.0);
        if (draw < kTurn45) {
            h = (h + (rng.uniform_int(0, 1) ? 1 : 7)) % 8;
        } else if (draw < kTurn45 + kTurn90) {
            h = (h + (rng.uniform_int(0, 1) ? 2 : 6)) % 8;
        }

        ApId next = slide(cur, h);
        if (next == -1 || next == prev) {
            // Cornered (or the slide would undo the last hop): restart in a
            // fresh feasible direction.
            std::vector<int> options;
            for (int cand = 0; cand < 8; ++cand) {
                const ApId to = slide(cur, cand);
                if (to != -1 && to != prev) options.push_back(cand);
            }
            if (options.empty()) {
                // Only possible on degenerate 1xN grids: accept the reversal.
                for (int cand = 0; cand < 8; ++cand) {
                    const ApId to = slide(cur, cand);
                    if (to != -1) options.push_back(cand);
                }
            }
            h = options[rng.uniform_index(options.size())];
            next = slide(cur, h);
        }
        heading = h;
        path.steps.push_back({next, co_region(grid, next)});
    }
    return path;
}

}  // namespace ltdps

#include "ltdps/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ltdps {

GridTopology::GridTopology(int ap_rows, int ap_cols)
    : ap_rows_(ap_rows), ap_cols_(ap_cols) {
    if (ap_rows < 1 || ap_cols < 1) {
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    }
}

void GridTopology::check_ap(ApId ap) const {
    if (!ap_in_bounds(ap)) {
        throw std::out_of_range("AP id out of range: " + std::to_string(ap));
    }
}

void GridTopology::check_region(RegionId region) const {
    if (!region_in_bounds(region)) {
        throw std::out_of_range("region id out of range: " + std::to_string(region));
    }
}

std::vector<ApId> GridTopology::ap_neighbors(ApId ap) const {
    check_ap(ap);
    const int row = ap_row(ap);
    const int col = ap_col(ap);
    std::vector<ApId> out;
    out.reserve(8);
    for (int r = row - 1; r <= row + 1; ++r) {
        for (int c = col - 1; c <= col + 1; ++c) {
            if (r < 0 || r >= ap_rows_ || c < 0 || c >= ap_cols_) continue;
            if (r == row && c == col) continue;
            out.push_back(ap_at(r, c));
        }
    }
    return out;  // row-major scan is already ascending
}

std::vector<ApId> GridTopology::region_aps(RegionId region) const {
    check_region(region);
    const int row = region_row(region);
    const int col = region_col(region);
    std::vector<ApId> out;
    out.reserve(4);
    for (int r = row - 1; r <= row; ++r) {
        for (int c = col - 1; c <= col; ++c) {
            if (r < 0 || r >= ap_rows_ || c < 0 || c >= ap_cols_) continue;
            out.push_back(ap_at(r, c));
        }
    }
    return out;
}

std::optional<RegionId> GridTopology::region_of(const std::vector<ApId>& aps) const {
    std::vector<ApId> sorted = aps;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) return std::nullopt;
    for (RegionId region = 0; region < region_count(); ++region) {
        if (region_aps(region) == sorted) return region;
    }
    return std::nullopt;
}

std::vector<ApId> GridTopology::candidate_next_aps(ApId current,
                                                   RegionId next_region) const {
    check_ap(current);
    const std::vector<ApId> neighbors = ap_neighbors(current);
    const std::vector<ApId> region = region_aps(next_region);
    std::vector<ApId> out;
    std::set_intersection(neighbors.begin(), neighbors.end(), region.begin(),
                          region.end(), std::back_inserter(out));
    return out;
}

std::vector<RegionId> GridTopology::region_neighbors(RegionId region) const {
    check_region(region);
    const int row = region_row(region);
    const int col = region_col(region);
    std::vector<RegionId> out;
    out.reserve(8);
    for (int r = row - 1; r <= row + 1; ++r) {
        for (int c = col - 1; c <= col + 1; ++c) {
            if (r < 0 || r >= region_rows() || c < 0 || c >= region_cols()) continue;
            if (r == row && c == col) continue;
            out.push_back(region_at(r, c));
        }
    }
    return out;
}

bool GridTopology::aps_adjacent(ApId a, ApId b) const {
    check_ap(a);
    check_ap(b);
    if (a == b) return false;
    return std::abs(ap_row(a) - ap_row(b)) <= 1 && std::abs(ap_col(a) - ap_col(b)) <= 1;
}

bool GridTopology::regions_adjacent(RegionId a, RegionId b) const {
    check_region(a);
    check_region(b);
    if (a == b) return false;
    return std::abs(region_row(a) - region_row(b)) <= 1 &&
           std::abs(region_col(a) - region_col(b)) <= 1;
}

std::pair<double, double> GridTopology::ap_position(ApId ap) const {
    check_ap(ap);
    return {static_cast<double>(ap_col(ap) + 1), static_cast<double>(ap_row(ap) + 1)};
}

std::optional<RegionId> GridTopology::region_at_position(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x > area_width() || y > area_height()) {
        return std::nullopt;
    }
    // Points on the closed far border belong to the outermost cells.
    const int col = std::min(static_cast<int>(x), region_cols() - 1);
    const int row = std::min(static_cast<int>(y), region_rows() - 1);
    return region_at(row, col);
}

}  // namespace ltdps

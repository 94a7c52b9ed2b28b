#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace ltdps {

using ApId = int;
using RegionId = int;

/// Lattice of access points with the surrounding lattice of mobile regions.
///
/// APs form an ap_rows x ap_cols grid numbered row-major. Regions form the
/// (ap_rows+1) x (ap_cols+1) grid of cells around them, also row-major, so a
/// region's APs are the lattice corners it touches: 1 for the four outermost
/// corner regions, 2 along the border, 4 in the interior.
///
/// In the continuous embedding each region is a unit cell; the area spans
/// [0, region_cols] x [0, region_rows] and AP (r, c) sits at (c+1, r+1).
///
/// Immutable after construction; safe to share between threads.
class GridTopology {
public:
    GridTopology() : GridTopology(5, 5) {}
    GridTopology(int ap_rows, int ap_cols);

    int ap_rows() const { return ap_rows_; }
    int ap_cols() const { return ap_cols_; }
    int region_rows() const { return ap_rows_ + 1; }
    int region_cols() const { return ap_cols_ + 1; }
    int ap_count() const { return ap_rows_ * ap_cols_; }
    int region_count() const { return region_rows() * region_cols(); }

    bool ap_in_bounds(ApId ap) const { return ap >= 0 && ap < ap_count(); }
    bool region_in_bounds(RegionId region) const {
        return region >= 0 && region < region_count();
    }

    int ap_row(ApId ap) const { return ap / ap_cols_; }
    int ap_col(ApId ap) const { return ap % ap_cols_; }
    ApId ap_at(int row, int col) const { return row * ap_cols_ + col; }

    int region_row(RegionId region) const { return region / region_cols(); }
    int region_col(RegionId region) const { return region % region_cols(); }
    RegionId region_at(int row, int col) const { return row * region_cols() + col; }

    /// All APs whose row and column each differ by at most one (the
    /// 8-connected lattice neighborhood), excluding ap itself. Ascending id.
    std::vector<ApId> ap_neighbors(ApId ap) const;

    /// The corner APs of a region, ascending id.
    std::vector<ApId> region_aps(RegionId region) const;

    /// The unique region whose corner-AP set equals aps, if any. The input
    /// need not be sorted. No match means the AP set does not describe a
    /// region (corrupted or incomplete sample).
    std::optional<RegionId> region_of(const std::vector<ApId>& aps) const;

    /// Probable next APs when moving from current into next_region:
    /// ap_neighbors(current) intersected with region_aps(next_region).
    /// May be empty when the region is not reachable from current.
    std::vector<ApId> candidate_next_aps(ApId current, RegionId next_region) const;

    /// 8-connected neighborhood on the region lattice, excluding region.
    std::vector<RegionId> region_neighbors(RegionId region) const;

    bool aps_adjacent(ApId a, ApId b) const;
    bool regions_adjacent(RegionId a, RegionId b) const;

    double area_width() const { return static_cast<double>(region_cols()); }
    double area_height() const { return static_cast<double>(region_rows()); }

    /// Continuous position of an AP: (col+1, row+1).
    std::pair<double, double> ap_position(ApId ap) const;

    /// Region cell containing (x, y); nullopt outside the area.
    std::optional<RegionId> region_at_position(double x, double y) const;

private:
    void check_ap(ApId ap) const;
    void check_region(RegionId region) const;

    int ap_rows_;
    int ap_cols_;
};

}  // namespace ltdps

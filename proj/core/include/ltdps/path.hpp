#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltdps/grid.hpp"

namespace ltdps {

/// One recorded association: the AP the node attached to and the region it
/// was in at that moment.
struct PathStep {
    ApId ap;
    RegionId region;

    bool operator==(const PathStep&) const = default;
};

/// Ordered sequence of (AP, region) visits. Valid paths keep each AP inside
/// its region's corner set and move only between lattice-adjacent APs.
struct MobilePath {
    std::vector<PathStep> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }

    bool operator==(const MobilePath&) const = default;
};

/// True when every step is consistent with the grid and consecutive APs are
/// adjacent. Does not enforce a minimum length.
bool path_valid(const MobilePath& path, const GridTopology& grid);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "19(22),13(15),8(9)"
std::string format_path(const MobilePath& path);

/// Parses one history line. Throws ParseError on malformed input.
MobilePath parse_path(std::string_view line);

/// History file: one path per line in format_path() notation, LF endings.
std::vector<MobilePath> load_path_history(const std::string& filename);
void save_path_history(const std::string& filename,
                       const std::vector<MobilePath>& paths);
void append_path_history(const std::string& filename, const MobilePath& path);

}  // namespace ltdps

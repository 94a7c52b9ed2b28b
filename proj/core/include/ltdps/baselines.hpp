#pragma once

#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/path.hpp"
#include "ltdps/random.hpp"

namespace ltdps {

/// AP-to-AP transition frequencies mined from path history. Immutable after
/// build; rows of cells that were never visited fall back to the lowest-id
/// lattice neighbor at prediction time.
class TransitionMatrix {
public:
    explicit TransitionMatrix(const GridTopology& grid);

    long count(ApId from, ApId to) const;
    void add(ApId from, ApId to, long n = 1);

    int ap_count() const { return ap_count_; }
    const GridTopology& grid() const { return grid_; }

    long total() const;

private:
    GridTopology grid_;
    int ap_count_;
    std::vector<long> counts_;  // row-major ap_count x ap_count
};

TransitionMatrix build_tm(const std::vector<MobilePath>& history,
                          const GridTopology& grid);

/// The x most frequent successors of current, descending count with
/// ascending-id tie break. Zero-count successors are not predicted; an
/// all-zero row falls back to the lowest-id neighbor.
std::vector<ApId> tm_predict(const TransitionMatrix& tm, ApId current, int x = 1);

/// 1-based position of actual within the nonzero successors of current
/// (the matrix's own ranking); one past the end when actual never followed
/// current in history.
int tm_rank(const TransitionMatrix& tm, ApId current, ApId actual);

/// Uniform draw over the lattice neighbors of current.
ApId ip_predict(const GridTopology& grid, ApId current, Rng& rng);

}  // namespace ltdps

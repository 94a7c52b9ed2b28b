#include "ltdps/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltdps {

TransitionMatrix::TransitionMatrix(const GridTopology& grid)
    : grid_(grid),
      ap_count_(grid.ap_count()),
      counts_(static_cast<std::size_t>(ap_count_) * ap_count_, 0) {}

long TransitionMatrix::count(ApId from, ApId to) const {
    if (from < 0 || from >= ap_count_ || to < 0 || to >= ap_count_) {
        throw std::out_of_range("transition matrix index out of range");
    }
    return counts_[static_cast<std::size_t>(from) * ap_count_ + to];
}

void TransitionMatrix::add(ApId from, ApId to, long n) {
    if (from < 0 || from >= ap_count_ || to < 0 || to >= ap_count_) {
        throw std::out_of_range("transition matrix index out of range");
    }
    counts_[static_cast<std::size_t>(from) * ap_count_ + to] += n;
}

long TransitionMatrix::total() const {
    long sum = 0;
    for (long c : counts_) sum += c;
    return sum;
}

TransitionMatrix build_tm(const std::vector<MobilePath>& history,
                          const GridTopology& grid) {
    TransitionMatrix tm(grid);
    for (const MobilePath& path : history) {
        for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
            tm.add(path.steps[i].ap, path.steps[i + 1].ap);
        }
    }
    return tm;
}

namespace {

std::vector<ApId> sorted_successors(const TransitionMatrix& tm, ApId current) {
    std::vector<ApId> succ;
    for (ApId to = 0; to < tm.ap_count(); ++to) {
        if (tm.count(current, to) > 0) succ.push_back(to);
    }
    std::stable_sort(succ.begin(), succ.end(), [&](ApId a, ApId b) {
        const long ca = tm.count(current, a);
        const long cb = tm.count(current, b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    return succ;
}

}  // namespace

std::vector<ApId> tm_predict(const TransitionMatrix& tm, ApId current, int x) {
    if (x < 1) throw std::invalid_argument("x must be at least 1");
    std::vector<ApId> succ = sorted_successors(tm, current);
    if (succ.empty()) {
        // Never-visited row: predict the lowest-id neighbor.
        return {tm.grid().ap_neighbors(current).front()};
    }
    if (static_cast<int>(succ.size()) > x) succ.resize(static_cast<std::size_t>(x));
    return succ;
}

int tm_rank(const TransitionMatrix& tm, ApId current, ApId actual) {
    const std::vector<ApId> succ = sorted_successors(tm, current);
    for (std::size_t i = 0; i < succ.size(); ++i) {
        if (succ[i] == actual) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(succ.size()) + 1;
}

ApId ip_predict(const GridTopology& grid, ApId current, Rng& rng) {
    const std::vector<ApId> neighbors = grid.ap_neighbors(current);
    return neighbors[rng.uniform_index(neighbors.size())];
}

}  // namespace ltdps

#pragma once

#include "churnnet/core.hpp"
#include "churnnet/network.hpp"
#include "churnnet/random.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace churnnet {

/// Uniform grid over the unit square, ceil(sqrt(N)) cells per side, holding
/// a mirror of every living agent's position.
///
/// Queries keep scratch marks inside the index, so an index (like the
/// network it mirrors) must only be used from one thread at a time.
class GridIndex {
public:
    struct Entry {
        Slot slot = 0;
        AgentId id;
        Position pos;
    };

    explicit GridIndex(std::size_t n_agents);

    /// Index of every living agent in `net`, sized for `net.size()`.
    static GridIndex build(const Network& net);

    /// Clears the index and re-inserts every living agent of `net`.
    void rebuild(const Network& net);
    void insert(const Network& net, Slot s);
    void remove(const Network& net, Slot s);

    double cell_size() const { return cell_size_; }
    int cells_per_side() const { return side_; }
    std::size_t size() const { return count_; }

    std::pair<int, int> cell_of(Position p) const;
    std::span<const Entry> cell(int cx, int cy) const {
        return cells_[static_cast<std::size_t>(cy) * side_ + cx];
    }

    /// (cell index, agent id) for every entry, sorted. For equality checks.
    std::vector<std::pair<std::size_t, AgentId>> contents() const;

    std::optional<Slot> nearest_feasible(const Network& net, Slot i) const;
    std::optional<Slot> random_feasible(const Network& net, Slot i, Rng& rng) const;

private:
    void mark_neighbors(const Network& net, Slot i) const;
    bool marked(Slot s) const { return s < marks_.size() && marks_[s] == stamp_; }

    int side_;
    double cell_size_;
    std::vector<std::vector<Entry>> cells_;
    std::size_t count_ = 0;

    mutable std::vector<std::uint32_t> marks_;
    mutable std::uint32_t stamp_ = 0;
};

/// Closest agent j != i that i may link to: not yet a neighbour, and the link
/// keeps both ledgers within p_max. Exact distance ties go to the smaller id.
std::optional<AgentId> nearest_feasible(const GridIndex& index, const Network& net, AgentId i);

/// Uniform draw from the same feasible set as nearest_feasible.
std::optional<AgentId> random_feasible(const GridIndex& index, const Network& net, AgentId i,
                                       Rng& rng);

} // namespace churnnet

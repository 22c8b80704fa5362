#include "churnnet/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace churnnet {

namespace {

// Slack applied to ring bounds so that floating-point rounding at cell
// borders can only make the search look further, never stop early.
constexpr double kBorderSlack = 1e-12;

int grid_side(std::size_t n_agents) {
    const auto n = std::max<std::size_t>(n_agents, 1);
    auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (side * side < n) {
        ++side;
    }
    while (side > 1 && (side - 1) * (side - 1) >= n) {
        --side;
    }
    return static_cast<int>(side);
}

} // namespace

GridIndex::GridIndex(std::size_t n_agents)
    : side_(grid_side(n_agents)),
      cell_size_(1.0 / side_),
      cells_(static_cast<std::size_t>(side_) * side_) {}

GridIndex GridIndex::build(const Network& net) {
    GridIndex index(net.size());
    index.rebuild(net);
    return index;
}

void GridIndex::rebuild(const Network& net) {
    for (auto& c : cells_) {
        c.clear();
    }
    count_ = 0;
    for (Slot s : net.living()) {
        insert(net, s);
    }
}

std::pair<int, int> GridIndex::cell_of(Position p) const {
    auto axis = [this](double v) {
        const int c = static_cast<int>(std::floor(v * side_));
        return std::clamp(c, 0, side_ - 1);
    };
    return {axis(p.x), axis(p.y)};
}

void GridIndex::insert(const Network& net, Slot s) {
    const Agent& a = net.agent_at(s);
    const auto [cx, cy] = cell_of(a.pos);
    cells_[static_cast<std::size_t>(cy) * side_ + cx].push_back(Entry{s, a.id, a.pos});
    ++count_;
}

void GridIndex::remove(const Network& net, Slot s) {
    const Agent& a = net.agent_at(s);
    const auto [cx, cy] = cell_of(a.pos);
    auto& c = cells_[static_cast<std::size_t>(cy) * side_ + cx];
    const auto it = std::find_if(c.begin(), c.end(), [&a](const Entry& e) { return e.id == a.id; });
    if (it == c.end()) {
        throw InvariantViolation("agent " + std::to_string(a.id.value) + " missing from grid index");
    }
    *it = c.back();
    c.pop_back();
    --count_;
}

std::vector<std::pair<std::size_t, AgentId>> GridIndex::contents() const {
    std::vector<std::pair<std::size_t, AgentId>> out;
    out.reserve(count_);
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        for (const Entry& e : cells_[k]) {
            out.emplace_back(k, e.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void GridIndex::mark_neighbors(const Network& net, Slot i) const {
    if (marks_.size() < net.slot_capacity()) {
        marks_.resize(net.slot_capacity(), 0);
    }
    if (++stamp_ == 0) {
        std::fill(marks_.begin(), marks_.end(), 0);
        stamp_ = 1;
    }
    marks_[i] = stamp_;
    for (const Link& l : net.links_at(i)) {
        marks_[l.peer] = stamp_;
    }
}

std::optional<Slot> GridIndex::nearest_feasible(const Network& net, Slot i) const {
    mark_neighbors(net, i);
    const Position origin = net.agent_at(i).pos;
    const double slack = net.p_max() - net.power_at(i);
    const double slack_margin = kBorderSlack * std::max(1.0, net.p_max());
    const auto [cx, cy] = cell_of(origin);

    bool found = false;
    double best_d2 = 0.0;
    AgentId best_id;
    Slot best_slot = 0;

    auto visit = [&](int x, int y) {
        for (const Entry& e : cell(x, y)) {
            if (marked(e.slot)) {
                continue;
            }
            const double d2 = distance2(origin, e.pos);
            if (found && (d2 > best_d2 || (d2 == best_d2 && e.id > best_id))) {
                continue;
            }
            if (!net.affordable(i, e.slot)) {
                continue;
            }
            found = true;
            best_d2 = d2;
            best_id = e.id;
            best_slot = e.slot;
        }
    };

    for (int r = 0;; ++r) {
        const int x0 = cx - r;
        const int x1 = cx + r;
        const int y0 = cy - r;
        const int y1 = cy + r;
        if (r == 0) {
            visit(cx, cy);
        } else {
            for (int x = std::max(x0, 0); x <= std::min(x1, side_ - 1); ++x) {
                if (y0 >= 0) {
                    visit(x, y0);
                }
                if (y1 < side_) {
                    visit(x, y1);
                }
            }
            for (int y = std::max(y0 + 1, 0); y <= std::min(y1 - 1, side_ - 1); ++y) {
                if (x0 >= 0) {
                    visit(x0, y);
                }
                if (x1 < side_) {
                    visit(x1, y);
                }
            }
        }

        // Distance from the query point to the nearest cell not yet visited.
        double bound = std::numeric_limits<double>::infinity();
        if (x0 > 0) {
            bound = std::min(bound, origin.x - static_cast<double>(x0) / side_);
        }
        if (x1 < side_ - 1) {
            bound = std::min(bound, static_cast<double>(x1 + 1) / side_ - origin.x);
        }
        if (y0 > 0) {
            bound = std::min(bound, origin.y - static_cast<double>(y0) / side_);
        }
        if (y1 < side_ - 1) {
            bound = std::min(bound, static_cast<double>(y1 + 1) / side_ - origin.y);
        }
        if (std::isinf(bound)) {
            break;
        }
        bound = std::max(0.0, bound - kBorderSlack);
        const double bound2 = bound * bound;
        if (found && best_d2 < bound2) {
            break;
        }
        // Every unvisited agent is at least `bound` away; if even that costs
        // more than i can still spend, nothing further out is feasible.
        const double cheapest = net.delta() == 2.0 ? bound2 : std::pow(bound2, 0.5 * net.delta());
        if (cheapest > slack + slack_margin) {
            break;
        }
    }
    if (!found) {
        return std::nullopt;
    }
    return best_slot;
}

std::optional<Slot> GridIndex::random_feasible(const Network& net, Slot i, Rng& rng) const {
    mark_neighbors(net, i);
    std::vector<Slot> pool;
    for (Slot s : net.living()) {
        if (!marked(s) && net.affordable(i, s)) {
            pool.push_back(s);
        }
    }
    if (pool.empty()) {
        return std::nullopt;
    }
    return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

std::optional<AgentId> nearest_feasible(const GridIndex& index, const Network& net, AgentId i) {
    const auto s = index.nearest_feasible(net, net.slot(i));
    if (!s) {
        return std::nullopt;
    }
    return net.agent_at(*s).id;
}

std::optional<AgentId> random_feasible(const GridIndex& index, const Network& net, AgentId i,
                                       Rng& rng) {
    const auto s = index.random_feasible(net, net.slot(i), rng);
    if (!s) {
        return std::nullopt;
    }
    return net.agent_at(*s).id;
}

} // namespace churnnet

#include "churnnet/graph_view.hpp"

#include "churnnet/power_sum.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace churnnet {

GraphView GraphView::from(const Network& net) {
    GraphView g;
    g.delta_ = net.delta();
    const auto living = net.living();
    const std::size_t n = living.size();

    std::vector<Vertex> vertex_of_slot(net.slot_capacity(), 0);
    for (std::size_t v = 0; v < n; ++v) {
        vertex_of_slot[living[v]] = static_cast<Vertex>(v);
    }

    g.ids_.reserve(n);
    g.pos_.reserve(n);
    g.ledger_.reserve(n);
    g.offsets_.reserve(n + 1);
    g.offsets_.push_back(0);
    g.adj_.reserve(2 * net.edge_count());
    g.power_.reserve(2 * net.edge_count());

    std::vector<std::pair<Vertex, double>> row;
    for (Slot s : living) {
        const Agent& a = net.agent_at(s);
        g.ids_.push_back(a.id);
        g.pos_.push_back(a.pos);
        g.ledger_.push_back(net.recompute_power(s));
        row.clear();
        for (const Link& l : net.links_at(s)) {
            row.emplace_back(vertex_of_slot[l.peer], l.power);
        }
        std::sort(row.begin(), row.end());
        for (const auto& [v, p] : row) {
            g.adj_.push_back(v);
            g.power_.push_back(p);
        }
        g.offsets_.push_back(static_cast<std::uint32_t>(g.adj_.size()));
    }
    return g;
}

GraphView GraphView::from_edges(std::vector<Position> positions,
                                std::span<const std::pair<Vertex, Vertex>> edges, double delta) {
    GraphView g;
    g.delta_ = delta;
    const std::size_t n = positions.size();
    g.pos_ = std::move(positions);
    g.ids_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        g.ids_[v] = AgentId{v};
    }

    std::vector<std::vector<Vertex>> rows(n);
    for (const auto& [a, b] : edges) {
        rows[a].push_back(b);
        rows[b].push_back(a);
    }
    g.offsets_.push_back(0);
    g.ledger_.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        auto& r = rows[v];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        ExactSum total;
        for (Vertex w : r) {
            const double p = pair_power(g.pos_[v], g.pos_[w], delta);
            g.adj_.push_back(w);
            g.power_.push_back(p);
            total.add(p);
        }
        g.ledger_[v] = total.value();
        g.offsets_.push_back(static_cast<std::uint32_t>(g.adj_.size()));
    }
    return g;
}

GraphView::Vertex GraphView::vertex_of(AgentId id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        throw UnknownAgent("agent " + std::to_string(id.value) + " is not in the graph");
    }
    return static_cast<Vertex>(it - ids_.begin());
}

} // namespace churnnet

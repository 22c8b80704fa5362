#pragma once

#include "churnnet/core.hpp"
#include "churnnet/network.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace churnnet {

/// Immutable compressed-adjacency snapshot of a network. Vertices are
/// numbered 0..n-1 in ascending AgentId order; each adjacency row is sorted.
class GraphView {
public:
    using Vertex = std::uint32_t;

    static GraphView from(const Network& net);

    /// Graph over explicit positions and an edge list. Edge powers are
    /// |r_i - r_j|^delta; ledgers are the incident sums. Ids are 0..n-1.
    static GraphView from_edges(std::vector<Position> positions,
                                std::span<const std::pair<Vertex, Vertex>> edges,
                                double delta = 2.0);

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return adj_.size() / 2; }
    double delta() const { return delta_; }

    AgentId id(Vertex v) const { return ids_[v]; }
    Position pos(Vertex v) const { return pos_[v]; }
    double ledger(Vertex v) const { return ledger_[v]; }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::span<const double> edge_powers(Vertex v) const {
        return {power_.data() + offsets_[v], power_.data() + offsets_[v + 1]};
    }

    /// Vertex number of an agent; throws UnknownAgent.
    Vertex vertex_of(AgentId id) const;

private:
    std::vector<AgentId> ids_;
    std::vector<Position> pos_;
    std::vector<double> ledger_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> adj_;
    std::vector<double> power_;
    double delta_ = 2.0;
};

} // namespace churnnet

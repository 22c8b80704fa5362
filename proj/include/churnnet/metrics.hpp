#pragma once

#include "churnnet/core.hpp"
#include "churnnet/graph_view.hpp"
#include "churnnet/network.hpp"
#include "churnnet/random.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace churnnet {

inline constexpr std::int32_t kUnreachable = -1;

/// True iff a single BFS reaches every vertex. The empty and one-vertex
/// graphs count as connected.
bool is_connected(const GraphView& g);

/// Per-step connectivity test straight off the live network, reusing its
/// buffers between calls.
class ConnectivityProbe {
public:
    bool operator()(const Network& net);

private:
    std::vector<std::uint32_t> seen_;
    std::vector<Slot> queue_;
    std::uint32_t stamp_ = 0;
};

/// BFS hop counts from `source`, indexed by vertex; kUnreachable elsewhere.
std::vector<std::int32_t> hop_distances(const GraphView& g, GraphView::Vertex source);
std::vector<std::int32_t> hop_distances(const GraphView& g, AgentId source);

struct DistanceStats {
    double avg_distance = 0.0;
    std::int32_t diameter = 0;
};

/// Mean over unordered pairs and maximum of hop distances. Throws
/// Disconnected unless every pair is reachable.
DistanceStats avg_distance_and_diameter(const GraphView& g);

struct RhoResult {
    double rho = 0.0;
    /// Pairs that entered the average.
    std::uint64_t pairs = 0;
    /// Pairs at zero separation, left out of the average.
    std::uint64_t coincident = 0;
};

/// Pair average of (summed link power along the route) / (power of a direct
/// link). The route is a minimum-hop path; among those, the one of least
/// summed power. Path sums run from the lower-numbered endpoint. Throws
/// Disconnected.
RhoResult power_efficiency_rho(const GraphView& g);

/// Distances and rho from one set of BFS passes.
struct PathSummary {
    DistanceStats distances;
    RhoResult rho;
};
PathSummary path_summary(const GraphView& g);

struct RobustnessDeltas {
    double delta_avg_distance = 0.0;
    double delta_diameter = 0.0;
    std::uint64_t trials = 0;
    /// Deletions that split the remaining graph.
    std::uint64_t disconnecting = 0;
};

/// Average change of (avg distance, diameter) over `trials` deletions of
/// distinct uniformly chosen vertices (all vertices when trials >= n). When
/// a deletion splits the graph, the average runs over still-connected pairs
/// (0 if there are none) and the diameter is that of the largest component.
/// Requires a connected graph with at least 3 vertices.
RobustnessDeltas robustness_deltas(const GraphView& g, Rng& rng, std::uint64_t trials);

/// The same average over an explicit list of deletions.
RobustnessDeltas robustness_deltas_for(const GraphView& g,
                                       std::span<const GraphView::Vertex> deletions);

struct DegreePowerStats {
    double mean_degree = 0.0;
    double mean_power = 0.0;
    double min_power = 0.0;
    double max_power = 0.0;
};

DegreePowerStats degree_and_power_stats(const GraphView& g);

struct ConnectivityScore {
    double value = 0.0;
    /// Set when phi == 1 and `value` is only the resolution limit.
    bool censored = false;
};

/// -log10(1 - phi). At phi == 1 returns -log10(1 / (samples + 1)).
ConnectivityScore connectivity_transform(double phi, std::uint64_t samples);

} // namespace churnnet

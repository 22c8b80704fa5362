// Brute-force reference implementations used only by the tests. Nothing
// here shares code paths with the library routines they check.
#pragma once

#include "churnnet/core.hpp"
#include "churnnet/graph_view.hpp"
#include "churnnet/network.hpp"
#include "churnnet/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using churnnet::AgentId;
using churnnet::GraphView;
using churnnet::Network;
using churnnet::Position;
using churnnet::Slot;

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// All-pairs hop distances; kInf when unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const GraphView& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (auto w : g.neighbors(static_cast<GraphView::Vertex>(v))) {
            d[v][w] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    return d;
}

inline double edge_power(const GraphView& g, GraphView::Vertex a, GraphView::Vertex b) {
    const auto nb = g.neighbors(a);
    const auto pw = g.edge_powers(a);
    for (std::size_t k = 0; k < nb.size(); ++k) {
        if (nb[k] == b) {
            return pw[k];
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Least left-to-right power sum over every simple path from s to t with
/// exactly `hops` links, by exhaustive depth-first enumeration.
inline double min_power_path(const GraphView& g, GraphView::Vertex s, GraphView::Vertex t,
                             int hops) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> on_path(g.size(), false);
    std::vector<GraphView::Vertex> path{s};
    on_path[s] = true;
    auto dfs = [&](auto&& self, GraphView::Vertex u, int depth) -> void {
        if (depth == hops) {
            if (u == t) {
                double sum = 0.0;
                for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                    sum += edge_power(g, path[k], path[k + 1]);
                }
                best = std::min(best, sum);
            }
            return;
        }
        for (auto w : g.neighbors(u)) {
            if (!on_path[w]) {
                on_path[w] = true;
                path.push_back(w);
                self(self, w, depth + 1);
                path.pop_back();
                on_path[w] = false;
            }
        }
    };
    dfs(dfs, s, 0);
    return best;
}

struct BruteRho {
    double rho = 0.0;
    std::uint64_t pairs = 0;
    std::uint64_t coincident = 0;
};

/// Rho by path enumeration. Pairs are visited with i < j in order and the
/// ratios summed in that order.
inline BruteRho brute_rho(const GraphView& g) {
    const auto d = floyd_warshall(g);
    BruteRho r;
    double sum = 0.0;
    for (GraphView::Vertex i = 0; i < g.size(); ++i) {
        for (GraphView::Vertex j = i + 1; j < g.size(); ++j) {
            const double direct = churnnet::pair_power(g.pos(i), g.pos(j), g.delta());
            if (direct == 0.0) {
                ++r.coincident;
                continue;
            }
            sum += min_power_path(g, i, j, d[i][j]) / direct;
            ++r.pairs;
        }
    }
    r.rho = r.pairs ? sum / static_cast<double>(r.pairs) : 0.0;
    return r;
}

/// Sum and count over connected unordered pairs, and the diameter of the
/// largest component (ties to the component holding the lowest vertex),
/// with `skip` removed. Computed from Floyd-Warshall on the reduced graph.
struct HopTotals {
    std::uint64_t sum = 0;
    std::uint64_t pairs = 0;
    int diameter = 0;
};

inline HopTotals totals_without(const GraphView& g, std::optional<GraphView::Vertex> skip) {
    std::vector<Position> pos;
    std::vector<GraphView::Vertex> keep;
    for (GraphView::Vertex v = 0; v < g.size(); ++v) {
        if (!skip || v != *skip) {
            keep.push_back(v);
            pos.push_back(g.pos(v));
        }
    }
    std::vector<GraphView::Vertex> remap(g.size(), 0);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        remap[keep[k]] = static_cast<GraphView::Vertex>(k);
    }
    std::vector<std::pair<GraphView::Vertex, GraphView::Vertex>> edges;
    for (auto v : keep) {
        for (auto w : g.neighbors(v)) {
            if ((!skip || w != *skip) && v < w) {
                edges.emplace_back(remap[v], remap[w]);
            }
        }
    }
    const GraphView h = GraphView::from_edges(pos, edges, g.delta());
    const auto d = floyd_warshall(h);
    const std::size_t n = h.size();

    // Components as the lowest reachable vertex.
    std::vector<std::size_t> root(n), size(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        root[i] = i;
        for (std::size_t j = 0; j < i; ++j) {
            if (d[i][j] < kInf) {
                root[i] = j;
                break;
            }
        }
        ++size[root[i]];
    }
    std::size_t largest = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (size[r] > size[largest]) {
            largest = r;
        }
    }

    HopTotals t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[i][j] < kInf) {
                t.sum += static_cast<std::uint64_t>(d[i][j]);
                ++t.pairs;
                if (root[i] == largest) {
                    t.diameter = std::max(t.diameter, d[i][j]);
                }
            }
        }
    }
    return t;
}

/// Mean change of (avg distance, diameter) over every single deletion, in
/// vertex order.
inline std::pair<double, double> exhaustive_robustness(const GraphView& g) {
    const HopTotals before = totals_without(g, std::nullopt);
    const double avg0 = static_cast<double>(before.sum) / static_cast<double>(before.pairs);
    double sa = 0.0;
    double sd = 0.0;
    for (GraphView::Vertex v = 0; v < g.size(); ++v) {
        const HopTotals after = totals_without(g, v);
        const double avg =
            after.pairs ? static_cast<double>(after.sum) / static_cast<double>(after.pairs) : 0.0;
        sa += avg - avg0;
        sd += static_cast<double>(after.diameter - before.diameter);
    }
    const auto n = static_cast<double>(g.size());
    return {sa / n, sd / n};
}

/// Two largest adjacency eigenvalues from a dense symmetric eigensolver.
inline std::pair<double, double> dense_top_two(const GraphView& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (GraphView::Vertex v = 0; v < g.size(); ++v) {
        for (auto w : g.neighbors(v)) {
            a(v, w) = 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues(); // ascending
    return {ev(n - 1), ev(n - 2)};
}

/// Feasible partners of i by scanning every living agent, checked directly
/// from the links and ledgers.
inline std::vector<Slot> feasible_set(const Network& net, Slot i) {
    std::vector<Slot> out;
    const double pmax = net.p_max();
    for (Slot j : net.living()) {
        if (j == i) {
            continue;
        }
        bool linked = false;
        for (const auto& l : net.links_at(i)) {
            linked = linked || l.peer == j;
        }
        if (linked) {
            continue;
        }
        const double p = churnnet::pair_power(net.agent_at(i).pos, net.agent_at(j).pos, net.delta());
        const auto cost = churnnet::PowerSum::from_double(p);
        const auto cap = churnnet::PowerSum::from_double(pmax);
        if (net.ledger_at(i) + cost <= cap && net.ledger_at(j) + cost <= cap) {
            out.push_back(j);
        }
    }
    return out;
}

/// Closest feasible partner by linear scan, ties to the smaller id.
inline std::optional<Slot> linear_nearest(const Network& net, Slot i) {
    std::optional<Slot> best;
    double best_d2 = 0.0;
    const Position o = net.agent_at(i).pos;
    for (Slot j : feasible_set(net, i)) {
        const double d2 = churnnet::distance2(o, net.agent_at(j).pos);
        if (!best || d2 < best_d2 ||
            (d2 == best_d2 && net.agent_at(j).id < net.agent_at(*best).id)) {
            best = j;
            best_d2 = d2;
        }
    }
    return best;
}

/// Connected random graph on n vertices: a random spanning tree plus each
/// other pair with probability p_extra. Positions uniform in the unit square.
inline GraphView random_connected_graph(churnnet::Rng& rng, std::size_t n, double p_extra,
                                        double delta = 2.0) {
    std::vector<Position> pos(n);
    for (auto& p : pos) {
        p = Position{rng.uniform(), rng.uniform()};
    }
    std::vector<std::pair<GraphView::Vertex, GraphView::Vertex>> edges;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (GraphView::Vertex v = 1; v < n; ++v) {
        const auto u = static_cast<GraphView::Vertex>(rng.below(v));
        edges.emplace_back(u, v);
        has[u][v] = has[v][u] = true;
    }
    for (GraphView::Vertex a = 0; a < n; ++a) {
        for (GraphView::Vertex b = a + 1; b < n; ++b) {
            if (!has[a][b] && rng.bernoulli(p_extra)) {
                edges.emplace_back(a, b);
                has[a][b] = has[b][a] = true;
            }
        }
    }
    return GraphView::from_edges(std::move(pos), edges, delta);
}

} // namespace oracle

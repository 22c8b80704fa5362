#include "churnnet/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace churnnet {

namespace {

using Vertex = GraphView::Vertex;

// BFS from `source` with `skip` treated as absent. Fills dist (kUnreachable
// for unvisited) and returns the visit order.
struct Bfs {
    std::vector<std::int32_t> dist;
    std::vector<Vertex> order;

    explicit Bfs(std::size_t n) : dist(n, kUnreachable) { order.reserve(n); }

    void run(const GraphView& g, Vertex source, Vertex skip = static_cast<Vertex>(-1)) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        order.clear();
        dist[source] = 0;
        order.push_back(source);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex u = order[head];
            const std::int32_t next = dist[u] + 1;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == kUnreachable && w != skip) {
                    dist[w] = next;
                    order.push_back(w);
                }
            }
        }
    }
};

struct HopTotals {
    std::uint64_t sum = 0;   // over unordered connected pairs
    std::uint64_t pairs = 0; // connected unordered pairs
    std::int32_t diameter = 0;
};

// Hop totals of g with vertex `skip` removed (none when skip is out of
// range). The diameter is taken over the largest remaining component.
HopTotals hop_totals(const GraphView& g, Vertex skip) {
    const std::size_t n = g.size();
    Bfs bfs(n);

    std::vector<std::int32_t> component(n, -1);
    std::vector<std::size_t> comp_size;
    for (Vertex v = 0; v < n; ++v) {
        if (v == skip || component[v] != -1) {
            continue;
        }
        bfs.run(g, v, skip);
        const auto label = static_cast<std::int32_t>(comp_size.size());
        for (Vertex w : bfs.order) {
            component[w] = label;
        }
        comp_size.push_back(bfs.order.size());
    }
    std::int32_t largest = 0;
    for (std::size_t c = 1; c < comp_size.size(); ++c) {
        if (comp_size[c] > comp_size[static_cast<std::size_t>(largest)]) {
            largest = static_cast<std::int32_t>(c);
        }
    }

    HopTotals t;
    for (std::size_t size : comp_size) {
        t.pairs += static_cast<std::uint64_t>(size) * (size - 1) / 2;
    }

    // Level-synchronous BFS from 64 sources at once: bit k of seen[v] says
    // whether source base + k has reached v.
    std::vector<std::uint64_t> seen(n);
    std::vector<std::uint64_t> frontier(n);
    std::vector<std::uint64_t> next(n);
    std::uint64_t ordered_sum = 0;
    for (std::size_t base = 0; base < n; base += 64) {
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(frontier.begin(), frontier.end(), 0);
        std::uint64_t sources = 0;
        for (std::size_t k = 0; k < 64 && base + k < n; ++k) {
            const auto v = static_cast<Vertex>(base + k);
            if (v != skip) {
                seen[v] = frontier[v] = std::uint64_t{1} << k;
                sources |= seen[v];
            }
        }
        std::uint64_t in_largest = 0;
        for (std::size_t k = 0; k < 64 && base + k < n; ++k) {
            const auto v = static_cast<Vertex>(base + k);
            if (v != skip && component[v] == largest) {
                in_largest |= std::uint64_t{1} << k;
            }
        }

        for (std::int32_t level = 1; sources; ++level) {
            std::uint64_t reached = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (v == skip || (seen[v] & sources) == sources) {
                    next[v] = 0;
                    continue;
                }
                std::uint64_t acc = 0;
                for (Vertex w : g.neighbors(v)) {
                    acc |= frontier[w];
                }
                acc &= ~seen[v];
                next[v] = acc;
                reached |= acc;
            }
            if (!reached) {
                break;
            }
            std::uint64_t count = 0;
            for (Vertex v = 0; v < n; ++v) {
                seen[v] |= next[v];
                count += static_cast<std::uint64_t>(std::popcount(next[v]));
            }
            ordered_sum += count * static_cast<std::uint64_t>(level);
            frontier.swap(next);
            if (reached & in_largest) {
                t.diameter = std::max(t.diameter, level);
            }
        }
    }
    t.sum = ordered_sum / 2;
    return t;
}

void require_connected(const GraphView& g, const char* what) {
    if (!is_connected(g)) {
        throw Disconnected(std::string(what) + " needs a connected graph");
    }
}

} // namespace

bool is_connected(const GraphView& g) {
    if (g.size() <= 1) {
        return true;
    }
    Bfs bfs(g.size());
    bfs.run(g, 0);
    return bfs.order.size() == g.size();
}

bool ConnectivityProbe::operator()(const Network& net) {
    const auto living = net.living();
    if (living.size() <= 1) {
        return true;
    }
    if (seen_.size() < net.slot_capacity()) {
        seen_.resize(net.slot_capacity(), 0);
    }
    if (++stamp_ == 0) {
        std::fill(seen_.begin(), seen_.end(), 0);
        stamp_ = 1;
    }
    queue_.clear();
    queue_.push_back(living.front());
    seen_[living.front()] = stamp_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        for (const Link& l : net.links_at(queue_[head])) {
            if (seen_[l.peer] != stamp_) {
                seen_[l.peer] = stamp_;
                queue_.push_back(l.peer);
            }
        }
    }
    return queue_.size() == living.size();
}

std::vector<std::int32_t> hop_distances(const GraphView& g, Vertex source) {
    if (source >= g.size()) {
        throw UnknownAgent("vertex out of range");
    }
    Bfs bfs(g.size());
    bfs.run(g, source);
    return std::move(bfs.dist);
}

std::vector<std::int32_t> hop_distances(const GraphView& g, AgentId source) {
    return hop_distances(g, g.vertex_of(source));
}

DistanceStats avg_distance_and_diameter(const GraphView& g) {
    require_connected(g, "average distance");
    const HopTotals t = hop_totals(g, static_cast<Vertex>(-1));
    DistanceStats d;
    d.avg_distance = t.pairs ? static_cast<double>(t.sum) / static_cast<double>(t.pairs) : 0.0;
    d.diameter = t.diameter;
    return d;
}

PathSummary path_summary(const GraphView& g) {
    require_connected(g, "path summary");
    const std::size_t n = g.size();
    std::vector<std::int32_t> dist(n);
    std::vector<double> route(n);
    std::vector<Vertex> order;
    order.reserve(n);

    std::uint64_t hop_sum = 0;
    std::int32_t diameter = 0;
    double ratio_sum = 0.0;
    RhoResult rho;

    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        order.clear();
        dist[s] = 0;
        route[s] = 0.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex u = order[head];
            const std::int32_t next = dist[u] + 1;
            const auto nbrs = g.neighbors(u);
            const auto powers = g.edge_powers(u);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                const Vertex w = nbrs[k];
                const double via = route[u] + powers[k];
                if (dist[w] == kUnreachable) {
                    dist[w] = next;
                    route[w] = via;
                    order.push_back(w);
                } else if (dist[w] == next && via < route[w]) {
                    route[w] = via;
                }
            }
        }
        for (Vertex t = s + 1; t < n; ++t) {
            hop_sum += static_cast<std::uint64_t>(dist[t]);
            diameter = std::max(diameter, dist[t]);
            const double direct = pair_power(g.pos(s), g.pos(t), g.delta());
            if (direct == 0.0) {
                ++rho.coincident;
                continue;
            }
            ratio_sum += route[t] / direct;
            ++rho.pairs;
        }
    }

    PathSummary out;
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    out.distances.avg_distance =
        pairs ? static_cast<double>(hop_sum) / static_cast<double>(pairs) : 0.0;
    out.distances.diameter = diameter;
    rho.rho = rho.pairs ? ratio_sum / static_cast<double>(rho.pairs) : 0.0;
    out.rho = rho;
    return out;
}

RhoResult power_efficiency_rho(const GraphView& g) {
    return path_summary(g).rho;
}

RobustnessDeltas robustness_deltas_for(const GraphView& g, std::span<const Vertex> deletions) {
    require_connected(g, "robustness");
    if (g.size() < 3) {
        throw InvariantViolation("robustness needs at least 3 vertices");
    }
    const DistanceStats before = avg_distance_and_diameter(g);
    RobustnessDeltas out;
    double sum_avg = 0.0;
    double sum_diam = 0.0;
    for (Vertex v : deletions) {
        const HopTotals after = hop_totals(g, v);
        const double avg =
            after.pairs ? static_cast<double>(after.sum) / static_cast<double>(after.pairs) : 0.0;
        if (after.pairs != static_cast<std::uint64_t>(g.size() - 1) * (g.size() - 2) / 2) {
            ++out.disconnecting;
        }
        sum_avg += avg - before.avg_distance;
        sum_diam += static_cast<double>(after.diameter - before.diameter);
        ++out.trials;
    }
    if (out.trials) {
        out.delta_avg_distance = sum_avg / static_cast<double>(out.trials);
        out.delta_diameter = sum_diam / static_cast<double>(out.trials);
    }
    return out;
}

RobustnessDeltas robustness_deltas(const GraphView& g, Rng& rng, std::uint64_t trials) {
    const std::size_t n = g.size();
    std::vector<Vertex> pool(n);
    for (Vertex v = 0; v < n; ++v) {
        pool[v] = v;
    }
    const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(trials, n));
    // Partial Fisher-Yates: the first `take` entries are a uniform sample
    // without replacement.
    for (std::size_t k = 0; k < take; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(pool[k], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    return robustness_deltas_for(g, pool);
}

DegreePowerStats degree_and_power_stats(const GraphView& g) {
    DegreePowerStats s;
    const std::size_t n = g.size();
    if (n == 0) {
        return s;
    }
    s.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    double total = 0.0;
    s.min_power = g.ledger(0);
    s.max_power = g.ledger(0);
    for (Vertex v = 0; v < n; ++v) {
        total += g.ledger(v);
        s.min_power = std::min(s.min_power, g.ledger(v));
        s.max_power = std::max(s.max_power, g.ledger(v));
    }
    s.mean_power = total / static_cast<double>(n);
    return s;
}

ConnectivityScore connectivity_transform(double phi, std::uint64_t samples) {
    if (phi >= 1.0) {
        return {-std::log10(1.0 / (static_cast<double>(samples) + 1.0)), true};
    }
    return {-std::log10(1.0 - phi), false};
}

} // namespace churnnet

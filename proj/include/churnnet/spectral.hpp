#pragma once

#include "churnnet/graph_view.hpp"

#include <cstdint>

namespace churnnet {

struct SpectralOptions {
    double tolerance = 1e-9;
    std::uint64_t max_iterations = 100'000;
    std::uint64_t seed = 0;
};

struct SpectralResult {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;
    std::uint64_t iterations = 0;
    bool converged = false;
    /// The raw lambda1 - lambda2 came out slightly negative and was set to 0.
    bool clamped = false;
};

/// Two leading adjacency eigenvalues by power iteration over the adjacency
/// lists; the second one is found with the leading eigenvector projected
/// out. Throws Disconnected for a disconnected graph or fewer than 2
/// vertices.
SpectralResult spectral_gap(const GraphView& g, const SpectralOptions& opts = {});

} // namespace churnnet

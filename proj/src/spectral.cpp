#include "churnnet/spectral.hpp"

#include "churnnet/metrics.hpp"
#include "churnnet/random.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace churnnet {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void project_out(std::vector<double>& x, std::span<const double> unit) {
    const double c = dot(x, unit);
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] -= c * unit[k];
    }
}

bool normalize(std::vector<double>& x) {
    const double norm = std::sqrt(dot(x, x));
    if (norm == 0.0) {
        return false;
    }
    for (double& v : x) {
        v /= norm;
    }
    return true;
}

struct Iteration {
    double theta = 0.0; // Rayleigh quotient of the shifted operator
    std::vector<double> vec;
    std::uint64_t iterations = 0;
    bool converged = false;
};

// Power iteration on (A + shift I), optionally restricted to the complement
// of `deflate`. Stops once successive Rayleigh quotients agree to `tol`
// relative and the geometric tail of the remaining increments is also below
// `tol`; increments at round-off level end the run as well.
Iteration power_iterate(const GraphView& g, double shift, std::vector<double> x,
                        std::optional<std::span<const double>> deflate, double tol,
                        std::uint64_t cap) {
    const std::size_t n = g.size();
    constexpr double floor = 64.0 * std::numeric_limits<double>::epsilon();
    if (deflate) {
        project_out(x, *deflate);
    }
    Iteration it;
    if (!normalize(x)) {
        it.vec = std::move(x);
        it.converged = true;
        return it;
    }

    std::vector<double> y(n);
    double prev = 0.0;
    double prev_diff = 0.0;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        for (GraphView::Vertex v = 0; v < n; ++v) {
            double acc = shift * x[v];
            for (GraphView::Vertex w : g.neighbors(v)) {
                acc += x[w];
            }
            y[v] = acc;
        }
        if (deflate) {
            project_out(y, *deflate);
        }
        const double theta = dot(x, y);
        it.iterations = k;
        it.theta = theta;
        x.swap(y);
        if (!normalize(x)) {
            // x was annihilated: it lay in the null space of the operator.
            it.theta = 0.0;
            it.converged = true;
            break;
        }
        if (k > 1) {
            const double diff = std::abs(theta - prev);
            const double scale = std::abs(theta);
            if (diff <= floor * scale) {
                it.converged = true;
                break;
            }
            if (diff <= tol * scale && prev_diff > 0.0) {
                const double ratio = diff / prev_diff;
                if (ratio < 1.0 && diff * ratio / (1.0 - ratio) <= tol * scale) {
                    it.converged = true;
                    break;
                }
            }
            prev_diff = diff;
        }
        prev = theta;
    }
    it.vec = std::move(x);
    return it;
}

} // namespace

SpectralResult spectral_gap(const GraphView& g, const SpectralOptions& opts) {
    const std::size_t n = g.size();
    if (n < 2 || !is_connected(g)) {
        throw Disconnected("spectral gap needs a connected graph with at least 2 vertices");
    }

    Rng rng(opts.seed);
    std::vector<double> start(n);
    for (double& v : start) {
        v = 1.0 + 1e-3 * (2.0 * rng.uniform() - 1.0);
    }

    // Any positive shift breaks the +/- lambda1 tie of bipartite graphs.
    constexpr double lead_shift = 1.0;
    const double lead_tol = std::min(opts.tolerance, 1e-12);
    Iteration lead = power_iterate(g, lead_shift, std::move(start), std::nullopt, lead_tol,
                                   opts.max_iterations);
    const double lambda1 = lead.theta - lead_shift;

    // Shifting by lambda1 makes the deflated operator positive semidefinite,
    // so its dominant eigenvalue is lambda2 + lambda1.
    std::vector<double> second_start(n);
    for (double& v : second_start) {
        v = 2.0 * rng.uniform() - 1.0;
    }
    const double second_shift = lambda1;
    Iteration second = power_iterate(g, second_shift, std::move(second_start),
                                     std::span<const double>(lead.vec), opts.tolerance,
                                     opts.max_iterations);

    SpectralResult r;
    r.lambda1 = lambda1;
    r.lambda2 = second.theta - second_shift;
    r.gap = r.lambda1 - r.lambda2;
    if (r.gap < 0.0) {
        r.gap = 0.0;
        r.clamped = true;
    }
    r.iterations = lead.iterations + second.iterations;
    r.converged = lead.converged && second.converged;
    return r;
}

} // namespace churnnet

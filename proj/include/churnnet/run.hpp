#pragma once

#include "churnnet/core.hpp"
#include "churnnet/network.hpp"
#include "churnnet/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace churnnet {

/// Which expensive metrics a sample computes. Degree, power and
/// connectivity are always measured.
struct MetricSet {
    bool distances = true;
    bool rho = true;
    bool spectral = true;
    bool robustness = true;

    static MetricSet none() { return {false, false, false, false}; }
    /// Parses "all", "none" or a comma list of distances,rho,spectral,robustness.
    static MetricSet parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const MetricSet&, const MetricSet&) = default;
};

/// Every structural quantity at one instant. Distance-type fields are only
/// present for connected snapshots.
struct MetricsSample {
    std::uint64_t step = 0;
    double mean_degree = 0.0;
    double mean_power = 0.0;
    double min_power = 0.0;
    double max_power = 0.0;
    bool connected = false;
    std::optional<double> avg_distance;
    std::optional<double> diameter;
    std::optional<double> rho;
    std::optional<double> spectral_gap;
    std::optional<double> delta_avg_distance;
    std::optional<double> delta_diameter;
    bool spectral_converged = true;
};

/// Measures `net`. Audits the network first; a failed audit throws
/// InvariantViolation.
MetricsSample take_sample(const Network& net, std::uint64_t step, const MetricSet& metrics,
                          std::uint64_t robustness_trials, Rng& metrics_rng);

struct RunResult {
    Params params;
    std::vector<MetricsSample> series;
    std::uint64_t measured_steps = 0;
    std::uint64_t connected_steps = 0;
};

/// Bootstrap, params.equil_steps unmeasured churn steps, then
/// params.measure_steps measured steps: connectivity every step and a full
/// sample every sample_interval steps.
RunResult run_single(const Params& params, const MetricSet& metrics = {});

struct Stat {
    /// NaN when there are no values.
    double mean = 0.0;
    /// Sample standard deviation over sqrt(count); NaN below two values.
    double se = 0.0;
    std::uint64_t count = 0;
};

Stat summarize_values(std::span<const double> values);

/// One aggregated row: every sample of every replicate pooled.
struct SummaryRow {
    Params params;
    std::uint64_t replicates = 0;
    std::uint64_t samples = 0;
    /// Samples taken while disconnected; they carry no distance metrics.
    std::uint64_t skipped = 0;
    std::uint64_t measured_steps = 0;
    std::uint64_t connected_steps = 0;
    double phi = 0.0;
    double neg_lg_one_minus_phi = 0.0;
    bool censored = false;
    Stat degree;
    Stat power;
    Stat avg_distance;
    Stat diameter;
    Stat rho;
    Stat gap;
    Stat delta_avg_distance;
    Stat delta_diameter;
    std::uint64_t spectral_unconverged = 0;
};

/// Pools the runs in the given order. `params` is what the row reports.
SummaryRow summarize(const Params& params, std::span<const RunResult> runs);

} // namespace churnnet

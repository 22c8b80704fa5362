// Parameter sweeps over seeded replicates.
//
// Seed derivation. Replicate r of sweep point p (points numbered from 0 in
// row order, the first axis outermost) runs with
//
//     seed(p, r) = mix64(mix64(mix64(base_seed) ^ p) ^ r)
//
// where mix64(x) is the splitmix64 output for state x (random.hpp). The derived seed
// is the run's params.seed, so any single run can be repeated on its own
// with `churnnet simulate --seed <derived>`.
#pragma once

#include "churnnet/core.hpp"
#include "churnnet/run.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace churnnet {

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t replicate);

enum class SweepParam : std::uint8_t { Q, PMin, PMax, NAgents };

std::string_view to_string(SweepParam p);
SweepParam parse_sweep_param(std::string_view name);

struct SweepAxis {
    SweepParam param = SweepParam::Q;
    std::vector<double> values;
};

/// target = factor * source, applied after the axes are set
/// (e.g. p_max = 2 p_min).
struct Coupling {
    SweepParam target = SweepParam::PMax;
    double factor = 2.0;
    SweepParam source = SweepParam::PMin;

    /// Parses "pmax=2*pmin".
    static Coupling parse(std::string_view text);
    std::string to_string() const;
};

struct SweepSpec {
    Params base;
    std::vector<SweepAxis> axes;
    std::uint64_t replicates = 5;
    std::optional<Coupling> coupling;
    MetricSet metrics;

    /// Throws ConfigError.
    void validate() const;
};

/// Parameters of every point, in row order, with the base seed.
std::vector<Params> sweep_points(const SweepSpec& spec);

struct RunFailure {
    std::size_t point = 0;
    std::uint64_t replicate = 0;
    std::string what;
};

struct SweepResult {
    std::vector<SummaryRow> rows;
    std::vector<RunFailure> failures;
};

/// Runs every (point, replicate) on up to `threads` workers. Rows do not
/// depend on the worker count or on completion order. A failing run is
/// recorded and left out of its point's row.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

} // namespace churnnet

#include "churnnet/run.hpp"

#include "churnnet/churn.hpp"
#include "churnnet/graph_view.hpp"
#include "churnnet/metrics.hpp"
#include "churnnet/spectral.hpp"

#include <cmath>
#include <limits>

namespace churnnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Metric sampling draws from its own stream so that switching metrics on or
// off never changes the simulated trajectory.
constexpr std::uint64_t kMetricsStream = 0x6d65747269637321ULL;

} // namespace

MetricSet MetricSet::parse(std::string_view text) {
    if (text == "all") {
        return {};
    }
    MetricSet m = none();
    if (text == "none") {
        return m;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, comma - start);
        if (item == "distances") {
            m.distances = true;
        } else if (item == "rho") {
            m.rho = true;
        } else if (item == "spectral") {
            m.spectral = true;
        } else if (item == "robustness") {
            m.robustness = true;
        } else {
            throw ConfigError("unknown metric '" + std::string(item) + "'");
        }
        start = comma + 1;
    }
    return m;
}

std::string MetricSet::to_string() const {
    if (*this == MetricSet{}) {
        return "all";
    }
    std::string out;
    auto add = [&out](bool on, const char* name) {
        if (on) {
            if (!out.empty()) {
                out += ',';
            }
            out += name;
        }
    };
    add(distances, "distances");
    add(rho, "rho");
    add(spectral, "spectral");
    add(robustness, "robustness");
    return out.empty() ? "none" : out;
}

MetricsSample take_sample(const Network& net, std::uint64_t step, const MetricSet& metrics,
                          std::uint64_t robustness_trials, Rng& metrics_rng) {
    net.audit();
    const GraphView g = GraphView::from(net);

    MetricsSample s;
    s.step = step;
    const DegreePowerStats dp = degree_and_power_stats(g);
    s.mean_degree = dp.mean_degree;
    s.mean_power = dp.mean_power;
    s.min_power = dp.min_power;
    s.max_power = dp.max_power;
    s.connected = is_connected(g);
    if (!s.connected) {
        return s;
    }

    if (metrics.rho) {
        const PathSummary paths = path_summary(g);
        s.rho = paths.rho.rho;
        if (metrics.distances) {
            s.avg_distance = paths.distances.avg_distance;
            s.diameter = paths.distances.diameter;
        }
    } else if (metrics.distances) {
        const DistanceStats d = avg_distance_and_diameter(g);
        s.avg_distance = d.avg_distance;
        s.diameter = d.diameter;
    }
    if (metrics.spectral && g.size() >= 2) {
        SpectralOptions opts;
        opts.seed = metrics_rng.next();
        const SpectralResult r = spectral_gap(g, opts);
        s.spectral_gap = r.gap;
        s.spectral_converged = r.converged;
    }
    if (metrics.robustness && g.size() >= 3 && robustness_trials > 0) {
        const RobustnessDeltas r = robustness_deltas(g, metrics_rng, robustness_trials);
        s.delta_avg_distance = r.delta_avg_distance;
        s.delta_diameter = r.delta_diameter;
    }
    return s;
}

RunResult run_single(const Params& params, const MetricSet& metrics) {
    SimState state = bootstrap(params);
    Rng metrics_rng(mix64(params.seed ^ kMetricsStream));
    ConnectivityProbe connected;

    for (std::uint64_t k = 0; k < params.equil_steps; ++k) {
        churn_step(state);
    }

    RunResult run;
    run.params = params;
    for (std::uint64_t k = 1; k <= params.measure_steps; ++k) {
        churn_step(state);
        ++run.measured_steps;
        if (connected(state.net)) {
            ++run.connected_steps;
        }
        if (k % params.sample_interval == 0) {
            run.series.push_back(
                take_sample(state.net, state.step, metrics, params.robustness_trials, metrics_rng));
        }
    }
    return run;
}

Stat summarize_values(std::span<const double> values) {
    Stat s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = kNaN;
        s.se = kNaN;
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) {
        s.se = kNaN;
        return s;
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.se = sd / std::sqrt(static_cast<double>(values.size()));
    return s;
}

SummaryRow summarize(const Params& params, std::span<const RunResult> runs) {
    SummaryRow row;
    row.params = params;
    row.replicates = runs.size();

    std::vector<double> degree, power, avg, diam, rho, gap, davg, ddiam;
    for (const RunResult& run : runs) {
        row.measured_steps += run.measured_steps;
        row.connected_steps += run.connected_steps;
        for (const MetricsSample& s : run.series) {
            ++row.samples;
            degree.push_back(s.mean_degree);
            power.push_back(s.mean_power);
            if (!s.connected) {
                ++row.skipped;
                continue;
            }
            if (s.avg_distance) {
                avg.push_back(*s.avg_distance);
            }
            if (s.diameter) {
                diam.push_back(*s.diameter);
            }
            if (s.rho) {
                rho.push_back(*s.rho);
            }
            if (s.spectral_gap) {
                gap.push_back(*s.spectral_gap);
                if (!s.spectral_converged) {
                    ++row.spectral_unconverged;
                }
            }
            if (s.delta_avg_distance) {
                davg.push_back(*s.delta_avg_distance);
            }
            if (s.delta_diameter) {
                ddiam.push_back(*s.delta_diameter);
            }
        }
    }

    if (row.measured_steps > 0) {
        row.phi = static_cast<double>(row.connected_steps) / static_cast<double>(row.measured_steps);
        const ConnectivityScore c = connectivity_transform(row.phi, row.measured_steps);
        row.neg_lg_one_minus_phi = c.value;
        row.censored = c.censored;
    } else {
        row.phi = kNaN;
        row.neg_lg_one_minus_phi = kNaN;
    }
    row.degree = summarize_values(degree);
    row.power = summarize_values(power);
    row.avg_distance = summarize_values(avg);
    row.diameter = summarize_values(diam);
    row.rho = summarize_values(rho);
    row.gap = summarize_values(gap);
    row.delta_avg_distance = summarize_values(davg);
    row.delta_diameter = summarize_values(ddiam);
    return row;
}

} // namespace churnnet

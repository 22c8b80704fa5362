#pragma once

#include "churnnet/run.hpp"
#include "churnnet/sweep.hpp"

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace churnnet {

/// Column set of summary CSV files, in order.
inline constexpr std::array<std::string_view, 29> kSummaryColumns{
    "model",        "q",
    "n_agents",     "p_min",
    "p_max",        "delta",
    "seed",         "replicates",
    "samples",      "skipped",
    "phi",          "neg_lg_one_minus_phi",
    "censored",     "mean_degree",
    "se_degree",    "mean_power",
    "se_power",     "avg_distance",
    "se_avg_distance", "diameter",
    "se_diameter",  "rho",
    "se_rho",       "spectral_gap",
    "se_gap",       "delta_avg_distance",
    "se_delta_avg_distance", "delta_diameter",
    "se_delta_diameter",
};

using HeaderLines = std::vector<std::pair<std::string, std::string>>;

/// `# key value` lines, the column header, then one line per row. Undefined
/// values are empty fields.
void write_summary_csv(std::ostream& out, const HeaderLines& header,
                       std::span<const SummaryRow> rows);

/// Failed runs as trailing `# failed ...` comment lines.
void write_failures(std::ostream& out, std::span<const RunFailure> failures);

/// One line per sample of a single run.
void write_series_csv(std::ostream& out, const HeaderLines& header,
                      std::span<const MetricsSample> series);

} // namespace churnnet

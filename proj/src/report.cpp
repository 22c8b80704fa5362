#include "churnnet/report.hpp"

#include "churnnet/format.hpp"

namespace churnnet {

namespace {

void write_header(std::ostream& out, const HeaderLines& header) {
    for (const auto& [key, value] : header) {
        out << "# " << key << ' ' << value << '\n';
    }
}

std::string opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

} // namespace

void write_summary_csv(std::ostream& out, const HeaderLines& header,
                       std::span<const SummaryRow> rows) {
    write_header(out, header);
    for (std::size_t c = 0; c < kSummaryColumns.size(); ++c) {
        out << (c ? "," : "") << kSummaryColumns[c];
    }
    out << '\n';
    for (const SummaryRow& r : rows) {
        const Params& p = r.params;
        out << to_string(p.model) << ',' << format_double(p.q) << ',' << p.n_agents << ','
            << format_double(p.p_min) << ',' << format_double(p.p_max) << ','
            << format_double(p.delta) << ',' << p.seed << ',' << r.replicates << ','
            << r.samples << ',' << r.skipped << ',' << format_double(r.phi) << ','
            << format_double(r.neg_lg_one_minus_phi) << ',' << (r.censored ? 1 : 0);
        for (const Stat* s : {&r.degree, &r.power, &r.avg_distance, &r.diameter, &r.rho, &r.gap,
                              &r.delta_avg_distance, &r.delta_diameter}) {
            out << ',' << format_double(s->mean) << ',' << format_double(s->se);
        }
        out << '\n';
    }
}

void write_failures(std::ostream& out, std::span<const RunFailure> failures) {
    for (const RunFailure& f : failures) {
        out << "# failed point " << f.point << " replicate " << f.replicate << ": " << f.what
            << '\n';
    }
}

void write_series_csv(std::ostream& out, const HeaderLines& header,
                      std::span<const MetricsSample> series) {
    write_header(out, header);
    out << "step,mean_degree,mean_power,min_power,max_power,connected,avg_distance,diameter,"
           "rho,spectral_gap,delta_avg_distance,delta_diameter\n";
    for (const MetricsSample& s : series) {
        out << s.step << ',' << format_double(s.mean_degree) << ',' << format_double(s.mean_power)
            << ',' << format_double(s.min_power) << ',' << format_double(s.max_power) << ','
            << (s.connected ? 1 : 0) << ',' << opt(s.avg_distance) << ',' << opt(s.diameter)
            << ',' << opt(s.rho) << ',' << opt(s.spectral_gap) << ','
            << opt(s.delta_avg_distance) << ',' << opt(s.delta_diameter) << '\n';
    }
}

} // namespace churnnet

// churnnet: command-line driver for the churn topology simulator.
//
//   churnnet simulate [flags]            one run, summary CSV (+ --series)
//   churnnet sweep <spec> [flags]        parameter sweep from a key = value file
//   churnnet snapshot --out <file>       run, then export the final network
//   churnnet analyze <snapshot>          measure a saved network
//
// Exit codes: 0 ok, 1 configuration error, 2 invariant violation or failed
// runs, 3 I/O error.

#include "churnnet/churn.hpp"
#include "churnnet/config.hpp"
#include "churnnet/format.hpp"
#include "churnnet/report.hpp"
#include "churnnet/run.hpp"
#include "churnnet/snapshot.hpp"
#include "churnnet/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace churnnet;

constexpr int kOk = 0;
constexpr int kConfig = 1;
constexpr int kInvariant = 2;
constexpr int kIo = 3;

struct Flags {
    std::string config;
    std::map<std::string, std::string> overrides;
    std::string out;
    std::string series;
    unsigned threads = 1;
};

void add_param_flags(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "key = value settings file");
    for (const char* key : {"model", "q", "n", "pmin", "pmax", "delta", "seed", "equil",
                            "measure", "sample-interval", "replicates", "trials", "metrics",
                            "couple"}) {
        const std::string name = std::string("--") + key;
        cmd.add_option_function<std::string>(
            name, [&f, key](const std::string& v) { f.overrides[key] = v; },
            std::string("override '") + key + "'");
    }
    cmd.add_option("--out", f.out, "output path (stdout when omitted)");
}

Settings gather(const Flags& f, const std::string& positional = {}) {
    Settings s;
    if (!positional.empty()) {
        s = Settings::load(positional);
    }
    if (!f.config.empty()) {
        for (const auto& [k, v] : Settings::load(f.config).entries()) {
            s.set(k, v);
        }
    }
    for (const auto& [k, v] : f.overrides) {
        s.set(k, v);
    }
    return s;
}

// Runs `write` against --out or stdout.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    write(out);
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

int cmd_simulate(const Flags& f) {
    const Settings s = gather(f);
    const Params p = params_from(s);
    MetricSet metrics;
    if (const auto m = s.get("metrics")) {
        metrics = MetricSet::parse(*m);
    }
    const RunResult run = run_single(p, metrics);
    const SummaryRow row = summarize(p, std::span<const RunResult>(&run, 1));
    HeaderLines header = describe(p);
    header.emplace_back("metrics", metrics.to_string());
    emit(f.out, [&](std::ostream& out) {
        write_summary_csv(out, header, std::span<const SummaryRow>(&row, 1));
    });
    if (!f.series.empty()) {
        emit(f.series, [&](std::ostream& out) { write_series_csv(out, header, run.series); });
    }
    return kOk;
}

int cmd_sweep(const Flags& f, const std::string& spec_path) {
    const SweepSpec spec = sweep_from(gather(f, spec_path));
    const SweepResult result = run_sweep(spec, f.threads);
    emit(f.out, [&](std::ostream& out) {
        write_summary_csv(out, describe(spec), result.rows);
        write_failures(out, result.failures);
    });
    for (const RunFailure& fail : result.failures) {
        std::cerr << "run failed (point " << fail.point << ", replicate " << fail.replicate
                  << "): " << fail.what << '\n';
    }
    return result.failures.empty() ? kOk : kInvariant;
}

int cmd_snapshot(const Flags& f) {
    if (f.out.empty()) {
        throw ConfigError("snapshot needs --out");
    }
    const Params p = params_from(gather(f));
    SimState state = bootstrap(p);
    for (std::uint64_t k = 0; k < p.equil_steps + p.measure_steps; ++k) {
        churn_step(state);
    }
    state.net.audit();
    export_snapshot(f.out, state.net, p);
    return kOk;
}

int cmd_analyze(const Flags& f, const std::string& path) {
    const Snapshot snap = import_snapshot(path);
    MetricSet metrics;
    if (const auto it = f.overrides.find("metrics"); it != f.overrides.end()) {
        metrics = MetricSet::parse(it->second);
    }
    std::uint64_t trials = snap.params.robustness_trials;
    if (const auto it = f.overrides.find("trials"); it != f.overrides.end()) {
        trials = parse_uint(it->second);
    }
    Rng rng(mix64(snap.params.seed));
    const MetricsSample sample = take_sample(snap.net, 0, metrics, trials, rng);
    HeaderLines header = describe(snap.params);
    header.emplace_back("source", path);
    emit(f.out, [&](std::ostream& out) {
        write_series_csv(out, header, std::span<const MetricsSample>(&sample, 1));
    });
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Churn-driven wireless topology simulator"};
    app.require_subcommand(1);

    Flags flags;
    std::string positional;

    auto* simulate = app.add_subcommand("simulate", "run once and write a summary row");
    add_param_flags(*simulate, flags);
    simulate->add_option("--series", flags.series, "also write the per-sample time series here");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("spec", positional, "sweep settings file")->required();
    add_param_flags(*sweep, flags);
    sweep->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* snapshot = app.add_subcommand("snapshot", "run, then export the final network");
    add_param_flags(*snapshot, flags);

    auto* analyze = app.add_subcommand("analyze", "measure a snapshot file");
    analyze->add_option("snapshot", positional, "snapshot file")->required();
    add_param_flags(*analyze, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*simulate) {
            return cmd_simulate(flags);
        }
        if (*sweep) {
            return cmd_sweep(flags, positional);
        }
        if (*snapshot) {
            return cmd_snapshot(flags);
        }
        return cmd_analyze(flags, positional);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariant;
    }
}

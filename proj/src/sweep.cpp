#include "churnnet/sweep.hpp"

#include "churnnet/format.hpp"
#include "churnnet/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace churnnet {

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t replicate) {
    return mix64(mix64(mix64(base_seed) ^ point) ^ replicate);
}

std::string_view to_string(SweepParam p) {
    switch (p) {
    case SweepParam::Q:
        return "q";
    case SweepParam::PMin:
        return "pmin";
    case SweepParam::PMax:
        return "pmax";
    case SweepParam::NAgents:
        return "n";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "q") {
        return SweepParam::Q;
    }
    if (name == "pmin" || name == "p_min") {
        return SweepParam::PMin;
    }
    if (name == "pmax" || name == "p_max") {
        return SweepParam::PMax;
    }
    if (name == "n" || name == "n_agents") {
        return SweepParam::NAgents;
    }
    throw ConfigError("'" + std::string(name) + "' cannot be swept (use q, pmin, pmax or n)");
}

namespace {

double get(const Params& p, SweepParam which) {
    switch (which) {
    case SweepParam::Q:
        return p.q;
    case SweepParam::PMin:
        return p.p_min;
    case SweepParam::PMax:
        return p.p_max;
    case SweepParam::NAgents:
        return static_cast<double>(p.n_agents);
    }
    return 0.0;
}

void set(Params& p, SweepParam which, double value) {
    switch (which) {
    case SweepParam::Q:
        p.q = value;
        break;
    case SweepParam::PMin:
        p.p_min = value;
        break;
    case SweepParam::PMax:
        p.p_max = value;
        break;
    case SweepParam::NAgents:
        if (value < 0 || value != std::floor(value)) {
            throw ConfigError("n must be a whole number");
        }
        p.n_agents = static_cast<std::uint64_t>(value);
        break;
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

Coupling Coupling::parse(std::string_view text) {
    const auto eq = text.find('=');
    const auto star = text.find('*');
    if (eq == std::string_view::npos || star == std::string_view::npos || star < eq) {
        throw ConfigError("coupling must look like 'pmax=2*pmin'");
    }
    Coupling c;
    c.target = parse_sweep_param(trim(text.substr(0, eq)));
    c.factor = parse_double(trim(text.substr(eq + 1, star - eq - 1)));
    c.source = parse_sweep_param(trim(text.substr(star + 1)));
    if (c.target == c.source) {
        throw ConfigError("coupling must relate two different parameters");
    }
    return c;
}

std::string Coupling::to_string() const {
    return std::string(churnnet::to_string(target)) + "=" + format_double(factor) + "*" +
           std::string(churnnet::to_string(source));
}

void SweepSpec::validate() const {
    if (axes.size() > 2) {
        throw ConfigError("a sweep has at most two axes");
    }
    if (replicates < 1) {
        throw ConfigError("replicates must be at least 1");
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].values.empty()) {
            throw ConfigError("sweep axis '" + std::string(to_string(axes[a].param)) + "' is empty");
        }
        for (std::size_t b = a + 1; b < axes.size(); ++b) {
            if (axes[a].param == axes[b].param) {
                throw ConfigError("the same parameter is swept twice");
            }
        }
        if (coupling && coupling->target == axes[a].param) {
            throw ConfigError("a coupled parameter cannot also be swept");
        }
    }
    for (const Params& p : sweep_points(*this)) {
        p.validate();
    }
}

std::vector<Params> sweep_points(const SweepSpec& spec) {
    std::vector<Params> points{spec.base};
    for (const SweepAxis& axis : spec.axes) {
        std::vector<Params> next;
        next.reserve(points.size() * axis.values.size());
        for (const Params& p : points) {
            for (double v : axis.values) {
                Params q = p;
                set(q, axis.param, v);
                next.push_back(q);
            }
        }
        points = std::move(next);
    }
    if (spec.coupling) {
        for (Params& p : points) {
            set(p, spec.coupling->target, spec.coupling->factor * get(p, spec.coupling->source));
        }
    }
    return points;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    const std::vector<Params> points = sweep_points(spec);
    const std::size_t reps = static_cast<std::size_t>(spec.replicates);
    const std::size_t jobs = points.size() * reps;

    struct Outcome {
        std::optional<RunResult> run;
        std::string error;
    };
    std::vector<Outcome> outcomes(jobs);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t point = job / reps;
            const std::size_t rep = job % reps;
            Params p = points[point];
            p.seed = derive_seed(spec.base.seed, point, rep);
            try {
                outcomes[job].run = run_single(p, spec.metrics);
            } catch (const std::exception& e) {
                outcomes[job].error = e.what();
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }

    SweepResult result;
    for (std::size_t point = 0; point < points.size(); ++point) {
        std::vector<RunResult> runs;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            Outcome& o = outcomes[point * reps + rep];
            if (o.run) {
                runs.push_back(std::move(*o.run));
            } else {
                result.failures.push_back(RunFailure{point, rep, o.error});
            }
        }
        result.rows.push_back(summarize(points[point], runs));
    }
    return result;
}

} // namespace churnnet

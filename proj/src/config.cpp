#include "churnnet/config.hpp"

#include "churnnet/format.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace churnnet {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.emplace_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

bool is_list(std::string_view value) {
    return value.find(',') != std::string_view::npos;
}

ModelKind parse_model(std::string_view v) {
    if (v == "A" || v == "a") {
        return ModelKind::A;
    }
    if (v == "B" || v == "b") {
        return ModelKind::B;
    }
    throw ConfigError("model must be A or B, got '" + std::string(v) + "'");
}

struct Alias {
    std::string_view from;
    std::string_view to;
};

constexpr std::array kAliases{
    Alias{"n-agents", "n"},          Alias{"p-min", "pmin"},
    Alias{"p-max", "pmax"},          Alias{"equil-steps", "equil"},
    Alias{"measure-steps", "measure"}, Alias{"robustness-trials", "trials"},
    Alias{"coupling", "couple"},
};

constexpr std::array<std::string_view, 14> kKeys{
    "model", "q",       "n",               "pmin",       "pmax",   "delta",  "seed",
    "equil", "measure", "sample-interval", "replicates", "trials", "couple", "metrics"};

} // namespace

std::string Settings::canonical_key(std::string_view key) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '_', '-');
    std::transform(k.begin(), k.end(), k.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const Alias& a : kAliases) {
        if (k == a.from) {
            k = a.to;
        }
    }
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) {
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    }
    return k;
}

Settings Settings::parse(std::string_view text, std::string_view origin) {
    Settings s;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        try {
            s.set(line.substr(0, eq), std::string(trim(line.substr(eq + 1))));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return s;
}

Settings Settings::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

void Settings::set(std::string_view key, std::string value) {
    const std::string k = canonical_key(key);
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&k](const auto& e) { return e.first == k; });
    if (it != entries_.end()) {
        it->second = std::move(value);
    } else {
        entries_.emplace_back(k, std::move(value));
    }
}

std::optional<std::string> Settings::get(std::string_view key) const {
    const std::string k = canonical_key(key);
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&k](const auto& e) { return e.first == k; });
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

// Applies one scalar setting to params. Sweep-only keys are ignored here.
void apply(Params& p, const std::string& key, std::string_view value) {
    if (key == "model") {
        p.model = parse_model(value);
    } else if (key == "q") {
        p.q = parse_double(value);
    } else if (key == "n") {
        p.n_agents = parse_uint(value);
    } else if (key == "pmin") {
        p.p_min = parse_double(value);
    } else if (key == "pmax") {
        p.p_max = parse_double(value);
    } else if (key == "delta") {
        p.delta = parse_double(value);
    } else if (key == "seed") {
        p.seed = parse_uint(value);
    } else if (key == "equil") {
        p.equil_steps = parse_uint(value);
    } else if (key == "measure") {
        p.measure_steps = parse_uint(value);
    } else if (key == "sample-interval") {
        p.sample_interval = parse_uint(value);
    } else if (key == "trials") {
        p.robustness_trials = parse_uint(value);
    }
}

} // namespace

Params params_from(const Settings& s) {
    Params p;
    for (const auto& [key, value] : s.entries()) {
        if (is_list(value)) {
            throw ConfigError("'" + key + "' takes a single value here");
        }
        apply(p, key, value);
    }
    p.validate();
    return p;
}

SweepSpec sweep_from(const Settings& s) {
    SweepSpec spec;
    for (const auto& [key, value] : s.entries()) {
        if (key == "replicates") {
            spec.replicates = parse_uint(value);
        } else if (key == "couple") {
            spec.coupling = Coupling::parse(value);
        } else if (key == "metrics") {
            spec.metrics = MetricSet::parse(value);
        } else if (is_list(value)) {
            SweepAxis axis;
            axis.param = parse_sweep_param(key);
            for (const std::string& item : split_list(value)) {
                if (!item.empty()) {
                    axis.values.push_back(parse_double(item));
                }
            }
            spec.axes.push_back(std::move(axis));
        } else {
            apply(spec.base, key, value);
        }
    }
    spec.validate();
    return spec;
}

std::vector<std::pair<std::string, std::string>> describe(const Params& p) {
    return {
        {"model", std::string(to_string(p.model))},
        {"q", format_double(p.q)},
        {"n_agents", std::to_string(p.n_agents)},
        {"p_min", format_double(p.p_min)},
        {"p_max", format_double(p.p_max)},
        {"delta", format_double(p.delta)},
        {"seed", std::to_string(p.seed)},
        {"equil_steps", std::to_string(p.equil_steps)},
        {"measure_steps", std::to_string(p.measure_steps)},
        {"sample_interval", std::to_string(p.sample_interval)},
        {"robustness_trials", std::to_string(p.robustness_trials)},
    };
}

std::vector<std::pair<std::string, std::string>> describe(const SweepSpec& spec) {
    auto out = describe(spec.base);
    for (const SweepAxis& axis : spec.axes) {
        std::string list;
        for (double v : axis.values) {
            if (!list.empty()) {
                list += ',';
            }
            list += format_double(v);
        }
        out.emplace_back("axis_" + std::string(to_string(axis.param)), list);
    }
    out.emplace_back("replicates", std::to_string(spec.replicates));
    if (spec.coupling) {
        out.emplace_back("couple", spec.coupling->to_string());
    }
    out.emplace_back("metrics", spec.metrics.to_string());
    out.emplace_back("seed_derivation", "mix64(mix64(mix64(seed)^point)^replicate)");
    return out;
}

} // namespace churnnet

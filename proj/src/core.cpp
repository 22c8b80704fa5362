#include "churnnet/core.hpp"

#include <cmath>
#include <numbers>

namespace churnnet {

bool in_unit_square(Position p) {
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

std::string_view to_string(AgentKind kind) {
    return kind == AgentKind::Local ? "local" : "random";
}

std::string_view to_string(LinkOrigin origin) {
    return origin == LinkOrigin::Local ? "local" : "random";
}

std::string_view to_string(ModelKind model) {
    return model == ModelKind::A ? "A" : "B";
}

void Params::validate() const {
    if (n_agents < 2) {
        throw ConfigError("n_agents must be at least 2");
    }
    if (!(p_min > 0.0) || !std::isfinite(p_min)) {
        throw ConfigError("p_min must be positive and finite");
    }
    if (!(p_max >= p_min) || !(p_max <= 1e9)) {
        throw ConfigError("p_max must lie in [p_min, 1e9]");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ConfigError("q must lie in [0, 1]");
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ConfigError("delta must be non-negative and finite");
    }
    if (sample_interval < 1) {
        throw ConfigError("sample_interval must be at least 1");
    }
}

double pair_power(Position a, Position b, double delta) {
    const double d2 = distance2(a, b);
    if (delta == 2.0) {
        return d2;
    }
    return std::pow(d2, 0.5 * delta);
}

double analytic_degree_q0(double n_agents, double delta, double p_min) {
    using std::numbers::pi;
    const double reach = (2.0 + delta) * p_min / (2.0 * pi * n_agents);
    return pi * n_agents * std::pow(reach, 2.0 / (2.0 + delta));
}

} // namespace churnnet

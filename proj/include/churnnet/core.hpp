#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace churnnet {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameters or configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A model invariant was broken at runtime. Always a bug or a corrupt input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class UnknownAgent : public Error {
public:
    using Error::Error;
};

/// A metric that needs a connected graph was asked of a disconnected one.
class Disconnected : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

bool in_unit_square(Position p);

struct AgentId {
    std::uint64_t value = 0;

    friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// Attachment kind of an agent. Only Model B consults it.
enum class AgentKind : std::uint8_t { Local, Random };

/// Which strategy created a link.
enum class LinkOrigin : std::uint8_t { Local, Random };

enum class ModelKind : std::uint8_t { A, B };

std::string_view to_string(AgentKind kind);
std::string_view to_string(LinkOrigin origin);
std::string_view to_string(ModelKind model);

struct Agent {
    AgentId id;
    Position pos;
    AgentKind kind = AgentKind::Local;
};

/// Full configuration of one simulation run.
///
/// `q` is the weight of RANDOM attachment: the per-attempt probability of a
/// random pick under Model A, and the fraction of Random-kind agents under
/// Model B. `1 - q` is the local (closest-feasible) weight.
struct Params {
    std::uint64_t n_agents = 1000;
    double delta = 2.0;
    double p_min = 1.0;
    double p_max = 2.0;
    ModelKind model = ModelKind::A;
    double q = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t equil_steps = 100'000;
    std::uint64_t measure_steps = 100'000;
    std::uint64_t sample_interval = 100;
    std::uint64_t robustness_trials = 10;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    friend bool operator==(const Params&, const Params&) = default;
};

// ---------------------------------------------------------------------------
// Power arithmetic
// ---------------------------------------------------------------------------

/// Squared Euclidean distance.
inline double distance2(Position a, Position b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Link cost |a - b|^delta. Computed from the squared distance so that it is
/// exactly symmetric and exact for delta = 2.
double pair_power(Position a, Position b, double delta);

/// Mean-field number of agents reachable with budget p_min when every agent
/// links to its closest neighbours: pi N ((2+delta) p_min / (2 pi N))^(2/(2+delta)).
double analytic_degree_q0(double n_agents, double delta, double p_min);

} // namespace churnnet

template <>
struct std::hash<churnnet::AgentId> {
    std::size_t operator()(churnnet::AgentId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};

#pragma once

#include "churnnet/core.hpp"
#include "churnnet/network.hpp"
#include "churnnet/random.hpp"
#include "churnnet/spatial_index.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace churnnet {

/// One replicate: the network, its index and the random stream that drives
/// it. (params, seed) fixes the whole trajectory.
struct SimState {
    Params params;
    Network net;
    GridIndex index;
    Rng rng;
    std::uint64_t step = 0;

    explicit SimState(const Params& p);
};

struct Candidate {
    Slot slot = 0;
    LinkOrigin origin = LinkOrigin::Local;
};

/// N agents at uniform positions with no links, then one deficit sweep over
/// everyone in random order. Throws ConfigError on invalid params.
SimState bootstrap(const Params& params);

/// Removes one uniformly random agent, adds a fresh one, then repairs
/// deficits.
void churn_step(SimState& state);

/// Links every agent below p_min until it reaches p_min or runs out of
/// feasible partners. The queue holds the agents that are in deficit when
/// the call starts, in random order. Returns the number of links added.
std::size_t satisfy_deficits(SimState& state);

/// Model A: random pick with probability q, else closest feasible.
/// Model B: Random-kind agents pick at random, Local-kind agents pick the
/// closest feasible. Both models consume one coin per call so that they
/// share a random stream at q = 0 and q = 1.
std::optional<Candidate> pick_candidate(SimState& state, Slot i);
std::optional<AgentId> pick_candidate(SimState& state, AgentId i);

/// Adds one agent at a uniform position; its kind is Random with
/// probability q.
Slot spawn_agent(SimState& state);

} // namespace churnnet

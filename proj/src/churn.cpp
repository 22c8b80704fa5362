#include "churnnet/churn.hpp"

#include <vector>

namespace churnnet {

SimState::SimState(const Params& p)
    : params(p), net(p.delta, p.p_max), index(p.n_agents), rng(p.seed) {}

Slot spawn_agent(SimState& state) {
    const double x = state.rng.uniform();
    const double y = state.rng.uniform();
    const AgentKind kind = state.rng.bernoulli(state.params.q) ? AgentKind::Random : AgentKind::Local;
    const AgentId id = state.net.add_agent(Position{x, y}, kind);
    const Slot s = state.net.slot(id);
    state.index.insert(state.net, s);
    return s;
}

SimState bootstrap(const Params& params) {
    params.validate();
    SimState state(params);
    for (std::uint64_t k = 0; k < params.n_agents; ++k) {
        spawn_agent(state);
    }
    satisfy_deficits(state);
    return state;
}

void churn_step(SimState& state) {
    const auto living = state.net.living();
    const Slot victim = living[static_cast<std::size_t>(state.rng.below(living.size()))];
    state.index.remove(state.net, victim);
    state.net.remove_agent(state.net.agent_at(victim).id);
    spawn_agent(state);
    satisfy_deficits(state);
    ++state.step;
}

std::optional<Candidate> pick_candidate(SimState& state, Slot i) {
    const double coin = state.rng.uniform();
    const bool random = state.params.model == ModelKind::A
                            ? coin < state.params.q
                            : state.net.agent_at(i).kind == AgentKind::Random;
    const auto pick = random ? state.index.random_feasible(state.net, i, state.rng)
                             : state.index.nearest_feasible(state.net, i);
    if (!pick) {
        return std::nullopt;
    }
    return Candidate{*pick, random ? LinkOrigin::Random : LinkOrigin::Local};
}

std::optional<AgentId> pick_candidate(SimState& state, AgentId i) {
    const auto c = pick_candidate(state, state.net.slot(i));
    if (!c) {
        return std::nullopt;
    }
    return state.net.agent_at(c->slot).id;
}

std::size_t satisfy_deficits(SimState& state) {
    const PowerSum p_min = PowerSum::from_double(state.params.p_min);
    std::vector<Slot> queue;
    for (Slot s : state.net.living()) {
        if (state.net.ledger_at(s) < p_min) {
            queue.push_back(s);
        }
    }
    state.rng.shuffle(std::span<Slot>(queue));

    std::size_t added = 0;
    for (Slot i : queue) {
        while (state.net.ledger_at(i) < p_min) {
            const auto c = pick_candidate(state, i);
            if (!c) {
                break;
            }
            if (state.net.add_link_at(i, c->slot, c->origin) != LinkResult::Added) {
                throw InvariantViolation("feasible candidate was rejected by the network");
            }
            ++added;
        }
    }
    return added;
}

} // namespace churnnet

#pragma once

#include "churnnet/core.hpp"
#include "churnnet/power_sum.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace churnnet {

/// Dense storage handle of a living agent. Stable for the agent's lifetime;
/// reused after the agent is removed.
using Slot = std::uint32_t;

enum class LinkResult : std::uint8_t { Added, AlreadyLinked, BudgetExceeded };

struct Link {
    Slot peer = 0;
    double power = 0.0;
    PowerSum units;
    LinkOrigin origin = LinkOrigin::Local;
};

/// Simple undirected graph over agents with per-edge power and a per-agent
/// power ledger P(i) = sum of incident edge powers.
///
/// Every link insertion is checked against the p_max budget of both ends.
/// Not thread-safe; one instance belongs to one thread at a time.
class Network {
public:
    Network(double delta, double p_max);

    double delta() const { return delta_; }
    double p_max() const { return p_max_; }

    /// Adds an agent with the next fresh id.
    AgentId add_agent(Position pos, AgentKind kind);
    /// Adds an agent with a caller-chosen id, which must be unused.
    AgentId add_agent(AgentId id, Position pos, AgentKind kind);

    LinkResult add_link(AgentId i, AgentId j, LinkOrigin origin = LinkOrigin::Local);
    LinkResult add_link_at(Slot i, Slot j, LinkOrigin origin);

    /// Removes the agent and all its links. Returns the former neighbours in
    /// the order their links were created.
    std::vector<AgentId> remove_agent(AgentId i);

    bool contains(AgentId id) const { return slot_of_.contains(id); }
    std::size_t size() const { return living_.size(); }
    std::size_t edge_count() const { return edges_; }

    const Agent& agent(AgentId id) const { return agent_at(slot(id)); }
    double power(AgentId id) const { return power_at(slot(id)); }
    std::vector<AgentId> neighbors(AgentId id) const;
    bool linked(AgentId a, AgentId b) const { return linked_at(slot(a), slot(b)); }

    /// Living agent ids in ascending order.
    std::vector<AgentId> ids() const;

    // Slot-level access for the index, the engine and the metrics.

    Slot slot(AgentId id) const;
    /// Living slots ordered by ascending AgentId.
    std::span<const Slot> living() const { return living_; }
    std::size_t slot_capacity() const { return slots_.size(); }
    const Agent& agent_at(Slot s) const { return slots_[s].agent; }
    std::span<const Link> links_at(Slot s) const { return slots_[s].links; }
    PowerSum ledger_at(Slot s) const { return slots_[s].ledger; }
    /// Correctly rounded sum of the agent's link powers.
    double power_at(Slot s) const { return slots_[s].power; }
    bool linked_at(Slot a, Slot b) const;

    /// Budget test alone: would a link i-j keep both ledgers within p_max?
    bool affordable(Slot i, Slot j) const;

    /// Sum of incident edge powers, recomputed from the links.
    PowerSum recompute_ledger(Slot s) const;
    double recompute_power(Slot s) const;

    /// Full consistency check: symmetry, simplicity, ledger agreement and the
    /// p_max budget. Throws InvariantViolation on the first failure.
    void audit() const;

    /// Overwrites the budget ledger without touching the links. Only useful
    /// for checking that audit() notices.
    void set_ledger(Slot s, PowerSum value) { slots_[s].ledger = value; }

private:
    struct Entry {
        Agent agent;
        bool alive = false;
        PowerSum ledger;
        double power = 0.0;
        std::vector<Link> links;
    };

    Slot insert(AgentId id, Position pos, AgentKind kind);

    double delta_;
    double p_max_;
    PowerSum p_max_units_;
    std::vector<Entry> slots_;
    std::vector<Slot> free_;
    std::vector<Slot> living_;
    std::unordered_map<AgentId, Slot> slot_of_;
    std::uint64_t next_id_ = 0;
    std::size_t edges_ = 0;
};

} // namespace churnnet

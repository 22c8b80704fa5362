#include "churnnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

namespace churnnet {

namespace {

std::string describe(AgentId id) {
    return "agent " + std::to_string(id.value);
}

} // namespace

Network::Network(double delta, double p_max)
    : delta_(delta), p_max_(p_max), p_max_units_(PowerSum::from_double(p_max)) {
    if (!(p_max >= 0.0 && p_max <= 1e9)) {
        throw ConfigError("p_max must lie in [0, 1e9]");
    }
}

AgentId Network::add_agent(Position pos, AgentKind kind) {
    const AgentId id{next_id_};
    insert(id, pos, kind);
    return id;
}

AgentId Network::add_agent(AgentId id, Position pos, AgentKind kind) {
    if (contains(id)) {
        throw InvariantViolation(describe(id) + " already exists");
    }
    insert(id, pos, kind);
    return id;
}

Slot Network::insert(AgentId id, Position pos, AgentKind kind) {
    if (!in_unit_square(pos)) {
        throw InvariantViolation(describe(id) + " placed outside the unit square");
    }
    Slot s;
    if (!free_.empty()) {
        s = free_.back();
        free_.pop_back();
    } else {
        s = static_cast<Slot>(slots_.size());
        slots_.emplace_back();
    }
    Entry& e = slots_[s];
    e.agent = Agent{id, pos, kind};
    e.alive = true;
    e.ledger = PowerSum{};
    e.power = 0.0;
    e.links.clear();

    // Ids are usually fresh and therefore the largest; keep living_ sorted.
    auto by_id = [this](Slot a, AgentId b) { return slots_[a].agent.id < b; };
    living_.insert(std::lower_bound(living_.begin(), living_.end(), id, by_id), s);
    slot_of_.emplace(id, s);
    next_id_ = std::max(next_id_, id.value + 1);
    return s;
}

Slot Network::slot(AgentId id) const {
    const auto it = slot_of_.find(id);
    if (it == slot_of_.end()) {
        throw UnknownAgent(describe(id) + " is not alive");
    }
    return it->second;
}

bool Network::linked_at(Slot a, Slot b) const {
    const auto& la = slots_[a].links;
    const auto& lb = slots_[b].links;
    const auto& shorter = la.size() <= lb.size() ? la : lb;
    const Slot other = la.size() <= lb.size() ? b : a;
    return std::any_of(shorter.begin(), shorter.end(),
                       [other](const Link& l) { return l.peer == other; });
}

bool Network::affordable(Slot i, Slot j) const {
    const PowerSum cost =
        PowerSum::from_double(pair_power(slots_[i].agent.pos, slots_[j].agent.pos, delta_));
    return slots_[i].ledger + cost <= p_max_units_ && slots_[j].ledger + cost <= p_max_units_;
}

LinkResult Network::add_link(AgentId i, AgentId j, LinkOrigin origin) {
    return add_link_at(slot(i), slot(j), origin);
}

LinkResult Network::add_link_at(Slot i, Slot j, LinkOrigin origin) {
    if (i == j) {
        throw InvariantViolation("self-link requested for " + describe(slots_[i].agent.id));
    }
    if (linked_at(i, j)) {
        return LinkResult::AlreadyLinked;
    }
    const double p = pair_power(slots_[i].agent.pos, slots_[j].agent.pos, delta_);
    const PowerSum cost = PowerSum::from_double(p);
    if (slots_[i].ledger + cost > p_max_units_ || slots_[j].ledger + cost > p_max_units_) {
        return LinkResult::BudgetExceeded;
    }
    slots_[i].links.push_back(Link{j, p, cost, origin});
    slots_[j].links.push_back(Link{i, p, cost, origin});
    slots_[i].ledger += cost;
    slots_[j].ledger += cost;
    slots_[i].power = recompute_power(i);
    slots_[j].power = recompute_power(j);
    ++edges_;
    return LinkResult::Added;
}

std::vector<AgentId> Network::remove_agent(AgentId id) {
    const Slot s = slot(id);
    Entry& e = slots_[s];
    std::vector<AgentId> former;
    former.reserve(e.links.size());
    for (const Link& l : e.links) {
        Entry& peer = slots_[l.peer];
        const auto it = std::find_if(peer.links.begin(), peer.links.end(),
                                     [s](const Link& pl) { return pl.peer == s; });
        peer.links.erase(it);
        peer.ledger -= l.units;
        peer.power = recompute_power(l.peer);
        former.push_back(peer.agent.id);
    }
    edges_ -= e.links.size();
    e.links.clear();
    e.ledger = PowerSum{};
    e.power = 0.0;
    e.alive = false;

    auto by_id = [this](Slot a, AgentId b) { return slots_[a].agent.id < b; };
    living_.erase(std::lower_bound(living_.begin(), living_.end(), id, by_id));
    slot_of_.erase(id);
    free_.push_back(s);
    return former;
}

std::vector<AgentId> Network::neighbors(AgentId id) const {
    std::vector<AgentId> out;
    for (const Link& l : links_at(slot(id))) {
        out.push_back(slots_[l.peer].agent.id);
    }
    return out;
}

std::vector<AgentId> Network::ids() const {
    std::vector<AgentId> out;
    out.reserve(living_.size());
    for (Slot s : living_) {
        out.push_back(slots_[s].agent.id);
    }
    return out;
}

PowerSum Network::recompute_ledger(Slot s) const {
    PowerSum total;
    for (const Link& l : slots_[s].links) {
        total += PowerSum::from_double(l.power);
    }
    return total;
}

double Network::recompute_power(Slot s) const {
    ExactSum total;
    for (const Link& l : slots_[s].links) {
        total.add(l.power);
    }
    return total.value();
}

void Network::audit() const {
    struct HalfEdge {
        Slot from;
        Slot to;
        double power;
        LinkOrigin origin;
        auto key() const { return std::tie(from, to); }
    };
    std::vector<HalfEdge> half;
    half.reserve(2 * edges_);
    for (Slot s : living_) {
        const Entry& e = slots_[s];
        auto who = [&e] { return describe(e.agent.id); };
        if (!e.alive) {
            throw InvariantViolation(who() + " listed as living but marked dead");
        }
        for (const Link& l : e.links) {
            if (l.peer == s) {
                throw InvariantViolation(who() + " has a self-loop");
            }
            if (l.peer >= slots_.size() || !slots_[l.peer].alive) {
                throw InvariantViolation(who() + " links to a dead agent");
            }
            half.push_back(HalfEdge{s, l.peer, l.power, l.origin});
        }

        if (e.ledger != recompute_ledger(s)) {
            throw InvariantViolation(who() + " ledger drifted from its links");
        }
        const double fresh = recompute_power(s);
        const double tol = 10.0 * std::numeric_limits<double>::epsilon() * std::abs(fresh);
        if (std::abs(e.power - fresh) > tol) {
            throw InvariantViolation(who() + " power total drifted from its links");
        }
        if (e.ledger > p_max_units_) {
            throw InvariantViolation(who() + " exceeds p_max");
        }
    }
    if (half.size() != 2 * edges_) {
        throw InvariantViolation("edge count does not match adjacency");
    }

    std::sort(half.begin(), half.end(),
              [](const HalfEdge& a, const HalfEdge& b) { return a.key() < b.key(); });
    for (std::size_t k = 0; k < half.size(); ++k) {
        const HalfEdge& h = half[k];
        if (k + 1 < half.size() && half[k + 1].key() == h.key()) {
            throw InvariantViolation(describe(slots_[h.from].agent.id) + " has a parallel edge");
        }
        const HalfEdge probe{h.to, h.from, 0.0, LinkOrigin::Local};
        const auto it = std::lower_bound(
            half.begin(), half.end(), probe,
            [](const HalfEdge& a, const HalfEdge& b) { return a.key() < b.key(); });
        if (it == half.end() || it->key() != probe.key() || it->power != h.power ||
            it->origin != h.origin) {
            throw InvariantViolation(describe(slots_[h.from].agent.id) + " has an asymmetric edge");
        }
    }
    if (slot_of_.size() != living_.size()) {
        throw InvariantViolation("id map does not match living set");
    }
}

} // namespace churnnet

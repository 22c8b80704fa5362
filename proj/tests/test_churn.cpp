#include <doctest.h>

#include "oracles.hpp"

#include "churnnet/churn.hpp"

#include <tuple>

using namespace churnnet;

namespace {

struct EdgeRecord {
    AgentId a;
    AgentId b;
    LinkOrigin origin;
    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

std::vector<EdgeRecord> edge_list(const Network& net) {
    std::vector<EdgeRecord> out;
    for (Slot s : net.living()) {
        for (const Link& l : net.links_at(s)) {
            const AgentId a = net.agent_at(s).id;
            const AgentId b = net.agent_at(l.peer).id;
            if (a < b) {
                out.push_back({a, b, l.origin});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

std::vector<Agent> agent_list(const Network& net) {
    std::vector<Agent> out;
    for (Slot s : net.living()) {
        out.push_back(net.agent_at(s));
    }
    return out;
}

bool same_agents(const std::vector<Agent>& x, const std::vector<Agent>& y) {
    if (x.size() != y.size()) {
        return false;
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].id != y[k].id || !(x[k].pos == y[k].pos) || x[k].kind != y[k].kind) {
            return false;
        }
    }
    return true;
}

// Every agent is at p_min or has nobody left to link to.
void check_deficit_postcondition(const SimState& st) {
    const PowerSum p_min = PowerSum::from_double(st.params.p_min);
    for (Slot s : st.net.living()) {
        if (st.net.ledger_at(s) < p_min) {
            REQUIRE(oracle::feasible_set(st.net, s).empty());
        }
    }
}

Params small(std::uint64_t n, double q, ModelKind model = ModelKind::A) {
    Params p;
    p.n_agents = n;
    p.q = q;
    p.model = model;
    p.seed = 1234;
    return p;
}

// Places agents by hand; deficits are left for the caller.
SimState empty_state(const Params& p) {
    return SimState(p);
}

Slot place(SimState& st, Position pos, AgentKind kind = AgentKind::Local) {
    const AgentId id = st.net.add_agent(pos, kind);
    const Slot s = st.net.slot(id);
    st.index.insert(st.net, s);
    return s;
}

} // namespace

TEST_CASE("bootstrap with two agents links them") {
    Params p = small(2, 0.0);
    p.p_min = 1.0;
    p.p_max = 2.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        p.seed = seed;
        const SimState st = bootstrap(p);
        const auto ids = st.net.ids();
        REQUIRE(ids.size() == 2);
        REQUIRE(st.net.linked(ids[0], ids[1]));
        const double d2 = distance2(st.net.agent(ids[0]).pos, st.net.agent(ids[1]).pos);
        CHECK(st.net.power(ids[0]) == d2);
        CHECK(st.net.power(ids[1]) == d2);
    }
}

TEST_CASE("bootstrap satisfies every deficit it can") {
    for (double q : {0.0, 0.3, 1.0}) {
        for (ModelKind m : {ModelKind::A, ModelKind::B}) {
            Params p = small(50, q, m);
            p.p_min = 0.5;
            p.p_max = 5.0;
            const SimState st = bootstrap(p);
            CHECK(st.net.size() == 50);
            check_deficit_postcondition(st);
            st.net.audit();
        }
    }
}

TEST_CASE("bootstrap rejects invalid params") {
    Params p = small(1, 0.0);
    CHECK_THROWS_AS(bootstrap(p), ConfigError);
}

TEST_CASE("model B kinds follow q without moving anyone") {
    const SimState zero = bootstrap(small(40, 0.0, ModelKind::B));
    const SimState one = bootstrap(small(40, 1.0, ModelKind::B));
    const auto a = agent_list(zero.net);
    const auto b = agent_list(one.net);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].id == b[k].id);
        CHECK(a[k].pos == b[k].pos);
        CHECK(a[k].kind == AgentKind::Local);
        CHECK(b[k].kind == AgentKind::Random);
    }
}

TEST_CASE("model B kind fraction tracks q") {
    Params p = small(2000, 0.3, ModelKind::B);
    p.p_min = 0.01;
    p.p_max = 0.02;
    const SimState st = bootstrap(p);
    std::size_t random = 0;
    for (Slot s : st.net.living()) {
        random += st.net.agent_at(s).kind == AgentKind::Random;
    }
    const double sigma = std::sqrt(2000.0 * 0.3 * 0.7);
    CHECK(std::abs(static_cast<double>(random) - 600.0) < 4.0 * sigma);
}

TEST_CASE("churn step on a two-agent system relinks survivor and newcomer") {
    Params p = small(2, 0.0);
    SimState st = bootstrap(p);
    for (int k = 0; k < 50; ++k) {
        const auto before = st.net.ids();
        churn_step(st);
        const auto after = st.net.ids();
        REQUIRE(after.size() == 2);
        // One of the old agents survived and the newcomer has the fresh id.
        REQUIRE((after[0] == before[0] || after[0] == before[1]));
        REQUIRE(after[1].value > before[1].value);
        REQUIRE(st.net.linked(after[0], after[1]));
        REQUIRE(st.net.edge_count() == 1);
    }
    CHECK(st.step == 50);
}

TEST_CASE("fixed seed gives identical trajectories") {
    for (ModelKind m : {ModelKind::A, ModelKind::B}) {
        Params p = small(120, 0.2, m);
        SimState a = bootstrap(p);
        SimState b = bootstrap(p);
        for (int k = 0; k < 100; ++k) {
            churn_step(a);
            churn_step(b);
        }
        CHECK(edge_list(a.net) == edge_list(b.net));
        CHECK(same_agents(agent_list(a.net), agent_list(b.net)));
        CHECK(a.rng.next() == b.rng.next());

        p.seed += 1;
        SimState c = bootstrap(p);
        for (int k = 0; k < 100; ++k) {
            churn_step(c);
        }
        CHECK(edge_list(a.net) != edge_list(c.net));
    }
}

TEST_CASE("budget holds at every step of a long run") {
    Params p = small(200, 0.1);
    p.p_min = 1.0;
    p.p_max = 2.0;
    SimState st = bootstrap(p);
    const PowerSum cap = PowerSum::from_double(p.p_max);
    for (int k = 0; k < 10000; ++k) {
        churn_step(st);
        REQUIRE(st.net.size() == 200);
        for (Slot s : st.net.living()) {
            REQUIRE(st.net.ledger_at(s) <= cap);
            REQUIRE(st.net.power_at(s) <= p.p_max);
        }
        if (k % 500 == 0) {
            st.net.audit();
            check_deficit_postcondition(st);
        }
    }
    st.net.audit();
}

TEST_CASE("satisfy_deficits examples") {
    SUBCASE("no deficits, no change") {
        Params p = small(3, 0.0);
        p.p_min = 0.1;
        p.p_max = 1.0;
        SimState st = empty_state(p);
        const Slot a = place(st, {0.1, 0.1});
        const Slot b = place(st, {0.1, 0.5});
        REQUIRE(st.net.add_link_at(a, b, LinkOrigin::Local) == LinkResult::Added);
        CHECK(satisfy_deficits(st) == 0);
        CHECK(st.net.edge_count() == 1);
    }
    SUBCASE("single deficit agent, one feasible partner") {
        Params p = small(3, 0.0);
        p.p_min = 0.1;
        p.p_max = 1.0;
        SimState st = empty_state(p);
        const Slot x = place(st, {0.1, 0.1});
        const Slot y = place(st, {0.1, 0.5});
        const Slot z = place(st, {0.9, 0.9});
        REQUIRE(st.net.add_link_at(x, y, LinkOrigin::Local) == LinkResult::Added);
        // z-x costs 1.28 > p_max; z-y costs 0.8 and fits both budgets.
        CHECK(satisfy_deficits(st) == 1);
        CHECK(st.net.linked_at(z, y));
        CHECK(!st.net.linked_at(z, x));
        CHECK(st.net.power_at(z) == doctest::Approx(0.8));
    }
    SUBCASE("every candidate would breach p_max") {
        Params p = small(4, 0.5);
        p.p_min = 0.001;
        p.p_max = 0.001;
        SimState st = empty_state(p);
        place(st, {0.1, 0.1});
        place(st, {0.5, 0.5});
        place(st, {0.9, 0.1});
        place(st, {0.1, 0.9});
        CHECK(satisfy_deficits(st) == 0);
        CHECK(st.net.edge_count() == 0);
    }
}

TEST_CASE("satisfy_deficits postcondition on random states") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng gen(seed);
        Params p = small(100, gen.uniform(), gen.bernoulli(0.5) ? ModelKind::A : ModelKind::B);
        p.seed = seed;
        p.delta = gen.bernoulli(0.5) ? 2.0 : 1.0 + 3.0 * gen.uniform();
        p.p_min = 0.02 + 0.5 * gen.uniform();
        p.p_max = p.p_min * (1.0 + 2.0 * gen.uniform());
        SimState st = empty_state(p);
        std::vector<Slot> slots;
        for (int k = 0; k < 100; ++k) {
            const auto kind = gen.bernoulli(p.q) ? AgentKind::Random : AgentKind::Local;
            slots.push_back(place(st, {gen.uniform(), gen.uniform()}, kind));
        }
        // Random partial wiring first.
        for (int k = 0; k < 150; ++k) {
            const Slot a = slots[gen.below(slots.size())];
            const Slot b = slots[gen.below(slots.size())];
            if (a != b) {
                st.net.add_link_at(a, b, LinkOrigin::Local);
            }
        }
        const std::size_t before = st.net.edge_count();
        const std::size_t added = satisfy_deficits(st);
        CHECK(st.net.edge_count() == before + added);
        CHECK(added <= 100 * 99 / 2);
        check_deficit_postcondition(st);
        st.net.audit();
    }
}

TEST_CASE("pick_candidate follows the attachment rule") {
    for (double q : {0.0, 1.0}) {
        Params p = small(150, q);
        p.p_min = 0.3;
        p.p_max = 0.6;
        SimState st = bootstrap(p);
        for (int k = 0; k < 30; ++k) {
            churn_step(st);
        }
        for (Slot s : st.net.living()) {
            Rng shadow = st.rng;
            shadow.uniform(); // the coin
            const auto c = pick_candidate(st, s);
            if (q == 0.0) {
                const auto expect = oracle::linear_nearest(st.net, s);
                REQUIRE(c.has_value() == expect.has_value());
                if (c) {
                    REQUIRE(c->slot == *expect);
                    REQUIRE(c->origin == LinkOrigin::Local);
                }
            } else {
                const auto feasible = oracle::feasible_set(st.net, s);
                REQUIRE(c.has_value() == !feasible.empty());
                if (c) {
                    REQUIRE(c->slot == feasible[shadow.below(feasible.size())]);
                    REQUIRE(c->origin == LinkOrigin::Random);
                }
            }
        }
    }
}

TEST_CASE("model A picks at random with probability q") {
    Params p = small(300, 0.25);
    p.p_min = 0.05;
    p.p_max = 10.0; // never binds, so both branches always succeed
    SimState st = bootstrap(p);
    int random = 0;
    const auto living = std::vector<Slot>(st.net.living().begin(), st.net.living().end());
    constexpr int kTrials = 8000;
    for (int k = 0; k < kTrials; ++k) {
        const auto c = pick_candidate(st, living[static_cast<std::size_t>(k) % living.size()]);
        REQUIRE(c.has_value());
        random += c->origin == LinkOrigin::Random;
    }
    const double sigma = std::sqrt(kTrials * 0.25 * 0.75);
    CHECK(std::abs(random - 0.25 * kTrials) < 4.0 * sigma);
}

TEST_CASE("models A and B coincide at q = 0 and q = 1") {
    for (double q : {0.0, 1.0}) {
        Params pa = small(150, q, ModelKind::A);
        Params pb = small(150, q, ModelKind::B);
        pa.p_min = pb.p_min = 0.5;
        pa.p_max = pb.p_max = 1.0;
        SimState a = bootstrap(pa);
        SimState b = bootstrap(pb);
        for (int k = 0; k < 500; ++k) {
            churn_step(a);
            churn_step(b);
            if (k % 50 == 0) {
                REQUIRE(edge_list(a.net) == edge_list(b.net));
            }
        }
        CHECK(edge_list(a.net) == edge_list(b.net));
        const auto aa = agent_list(a.net);
        const auto ab = agent_list(b.net);
        REQUIRE(aa.size() == ab.size());
        for (std::size_t k = 0; k < aa.size(); ++k) {
            CHECK(aa[k].id == ab[k].id);
            CHECK(aa[k].pos == ab[k].pos);
        }
        CHECK(a.rng.next() == b.rng.next());
    }
}

TEST_CASE("stuck agents are retried after later churn") {
    // A deficit agent that found nobody stays in deficit only while its
    // feasible set is empty; the full rescan on each event retries it.
    Params p = small(60, 0.0);
    p.p_min = 1.0;
    p.p_max = 1.2;
    SimState st = bootstrap(p);
    for (int k = 0; k < 300; ++k) {
        churn_step(st);
        check_deficit_postcondition(st);
    }
}

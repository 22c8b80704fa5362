#include "churnnet/snapshot.hpp"

#include "churnnet/config.hpp"
#include "churnnet/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace churnnet {

void write_snapshot(std::ostream& out, const Network& net, const Params& params) {
    for (const auto& [key, value] : describe(params)) {
        out << "# " << key << ' ' << value << '\n';
    }
    for (Slot s : net.living()) {
        const Agent& a = net.agent_at(s);
        out << "node " << a.id.value << ' ' << format_double(a.pos.x) << ' '
            << format_double(a.pos.y) << ' ' << to_string(a.kind) << ' '
            << format_double(net.power_at(s)) << '\n';
    }

    struct EdgeLine {
        AgentId a;
        AgentId b;
        double power;
        LinkOrigin origin;
    };
    std::vector<EdgeLine> edges;
    edges.reserve(net.edge_count());
    for (Slot s : net.living()) {
        const AgentId self = net.agent_at(s).id;
        for (const Link& l : net.links_at(s)) {
            const AgentId other = net.agent_at(l.peer).id;
            if (self < other) {
                edges.push_back(EdgeLine{self, other, l.power, l.origin});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeLine& x, const EdgeLine& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    for (const EdgeLine& e : edges) {
        out << "edge " << e.a.value << ' ' << e.b.value << ' ' << format_double(e.power) << ' '
            << to_string(e.origin) << '\n';
    }
}

void export_snapshot(const std::filesystem::path& path, const Network& net, const Params& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_snapshot(out, net, params);
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

namespace {

struct NodeLine {
    std::size_t line = 0;
    AgentId id;
    Position pos;
    AgentKind kind = AgentKind::Local;
    double power = 0.0;
};

struct EdgeRecord {
    std::size_t line = 0;
    AgentId a;
    AgentId b;
    double power = 0.0;
    LinkOrigin origin = LinkOrigin::Local;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw SnapshotError("snapshot line " + std::to_string(line) + ": " + what);
}

bool close_enough(double stored, double fresh) {
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * std::abs(fresh);
    return std::abs(stored - fresh) <= tol;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string f; in >> f;) {
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

Snapshot read_snapshot(std::istream& in) {
    Settings settings;
    std::vector<NodeLine> nodes;
    std::vector<EdgeRecord> edges;

    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        const auto f = fields_of(text);
        if (f.empty()) {
            continue;
        }
        try {
            if (f[0] == "#") {
                if (f.size() != 3) {
                    fail(line_no, "expected '# key value'");
                }
                settings.set(f[1], f[2]);
            } else if (f[0] == "node") {
                if (f.size() != 6) {
                    fail(line_no, "expected 'node <id> <x> <y> <kind> <P>'");
                }
                NodeLine n;
                n.line = line_no;
                n.id = AgentId{parse_uint(f[1])};
                n.pos = Position{parse_double(f[2]), parse_double(f[3])};
                if (f[4] == "local") {
                    n.kind = AgentKind::Local;
                } else if (f[4] == "random") {
                    n.kind = AgentKind::Random;
                } else {
                    fail(line_no, "agent kind must be local or random");
                }
                n.power = parse_double(f[5]);
                nodes.push_back(n);
            } else if (f[0] == "edge") {
                if (f.size() != 5) {
                    fail(line_no, "expected 'edge <i> <j> <p> <local|random>'");
                }
                EdgeRecord e;
                e.line = line_no;
                e.a = AgentId{parse_uint(f[1])};
                e.b = AgentId{parse_uint(f[2])};
                e.power = parse_double(f[3]);
                if (f[4] == "local") {
                    e.origin = LinkOrigin::Local;
                } else if (f[4] == "random") {
                    e.origin = LinkOrigin::Random;
                } else {
                    fail(line_no, "edge tag must be local or random");
                }
                edges.push_back(e);
            } else {
                fail(line_no, "unknown record '" + f[0] + "'");
            }
        } catch (const ConfigError& e) {
            fail(line_no, e.what());
        }
    }
    if (in.bad()) {
        throw IoError("read error in snapshot");
    }

    Params params;
    try {
        params = params_from(settings);
    } catch (const ConfigError& e) {
        throw SnapshotError(std::string("snapshot header: ") + e.what());
    }
    if (nodes.size() != params.n_agents) {
        throw SnapshotError("snapshot has " + std::to_string(nodes.size()) +
                            " nodes but n_agents is " + std::to_string(params.n_agents));
    }

    Snapshot snap{params, Network(params.delta, params.p_max)};
    Network& net = snap.net;
    for (const NodeLine& n : nodes) {
        try {
            net.add_agent(n.id, n.pos, n.kind);
        } catch (const InvariantViolation& e) {
            fail(n.line, e.what());
        }
    }
    for (const EdgeRecord& e : edges) {
        if (e.a == e.b) {
            fail(e.line, "self-loop");
        }
        if (!net.contains(e.a) || !net.contains(e.b)) {
            fail(e.line, "edge refers to an unknown node");
        }
        const double fresh = pair_power(net.agent(e.a).pos, net.agent(e.b).pos, params.delta);
        if (!close_enough(e.power, fresh)) {
            fail(e.line, "edge power does not match the node positions");
        }
        switch (net.add_link(e.a, e.b, e.origin)) {
        case LinkResult::Added:
            break;
        case LinkResult::AlreadyLinked:
            fail(e.line, "duplicate edge");
        case LinkResult::BudgetExceeded:
            fail(e.line, "edge pushes an agent over p_max");
        }
    }
    for (const NodeLine& n : nodes) {
        if (!close_enough(n.power, net.power(n.id))) {
            fail(n.line, "stored power does not match the node's edges");
        }
    }
    try {
        net.audit();
    } catch (const InvariantViolation& e) {
        throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
    }
    return snap;
}

Snapshot import_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return read_snapshot(in);
}

} // namespace churnnet

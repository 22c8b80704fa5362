// Plain-text network snapshots.
//
//   # <param> <value>                      one line per Params field
//   node <id> <x> <y> <local|random> <P>   ascending id
//   edge <i> <j> <p> <local|random>        i < j, ascending (i, j)
//
// The edge tag names the strategy that created the link. Reals are written
// in shortest round-trip form, so export -> import -> export is
// byte-identical.
#pragma once

#include "churnnet/core.hpp"
#include "churnnet/network.hpp"

#include <filesystem>
#include <istream>
#include <ostream>

namespace churnnet {

/// Malformed or inconsistent snapshot; the message carries the line number
/// where one applies.
class SnapshotError : public IoError {
public:
    using IoError::IoError;
};

struct Snapshot {
    Params params;
    Network net;
};

void write_snapshot(std::ostream& out, const Network& net, const Params& params);
void export_snapshot(const std::filesystem::path& path, const Network& net, const Params& params);

/// Parses a snapshot and rebuilds the network. Every edge power must match
/// the positions, every stored P must match its links, and the result must
/// pass Network::audit(); otherwise SnapshotError.
Snapshot read_snapshot(std::istream& in);
Snapshot import_snapshot(const std::filesystem::path& path);

} // namespace churnnet

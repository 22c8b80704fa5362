#pragma once

#include "churnnet/core.hpp"
#include "churnnet/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace churnnet {

/// Flat `key = value` settings, one per line, `#` starts a comment. Keys
/// are the long CLI flag names without dashes (`sample-interval`,
/// `pmin`, ...); underscores and a few long aliases are accepted. A later
/// assignment of a key replaces the earlier one but keeps its position.
class Settings {
public:
    static Settings parse(std::string_view text, std::string_view origin = "<config>");
    /// Throws IoError when the file cannot be read.
    static Settings load(const std::filesystem::path& path);

    void set(std::string_view key, std::string value);
    std::optional<std::string> get(std::string_view key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    /// Canonical spelling of a key; throws ConfigError for unknown keys.
    static std::string canonical_key(std::string_view key);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Params from scalar settings on top of the defaults. A comma list is a
/// ConfigError here.
Params params_from(const Settings& s);

/// Sweep specification: comma lists on q, pmin, pmax or n become axes in
/// the order the keys first appear.
SweepSpec sweep_from(const Settings& s);

/// `# key value` lines describing a run or a sweep.
std::vector<std::pair<std::string, std::string>> describe(const Params& p);
std::vector<std::pair<std::string, std::string>> describe(const SweepSpec& spec);

} // namespace churnnet

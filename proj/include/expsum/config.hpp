#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "expsum/census.hpp"
#include "expsum/equation.hpp"
#include "expsum/solver.hpp"

namespace expsum {

/// One reproducible run: everything a subcommand needs, serializable to JSON
/// with an exact round-trip (emit -> parse -> identical value).
struct RunConfig {
    std::string field = "7";
    std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;  ///< (a, g) encodings
    std::uint64_t b = 0;
    DeltaPolicy delta;
    std::uint64_t seed = 0;
    std::string out;  ///< output path; empty writes to stdout
    std::uint64_t count_cap = kDefaultCountCap;
    std::uint64_t brute_cap = kDefaultBruteCap;
    std::uint64_t work_cap = kDefaultSolveWorkCap;

    bool operator==(const RunConfig&) const = default;
};

std::string config_to_json(const RunConfig& cfg);

/// Throws std::invalid_argument naming the offending key or value.
RunConfig config_from_json(const std::string& text);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& cfg, const std::string& path);

/// Instance described by the config over the given field; every encoding is
/// range-checked (std::invalid_argument names the bad one). The field must be
/// the one cfg.field describes.
EquationInstance instance_from_config(const RunConfig& cfg, const Field& field);

}  // namespace expsum

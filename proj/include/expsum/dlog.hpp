#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "expsum/field.hpp"

namespace expsum {

/// One lookup's result: the exponent (absent when h is outside <g>) and the
/// number of giant-step multiplications spent, always <= ceil(sqrt(s)).
struct DlogResult {
    std::optional<std::uint64_t> exponent;
    std::uint64_t giant_steps = 0;
};

/// Baby-step/giant-step table for a subgroup <g> of F_q^* of exact order s.
/// Immutable after construction; lookups are read-only and thread-safe.
class DlogTable {
public:
    /// Requires g to have exact order s (checked; duplicate baby keys or
    /// g^s != 1 raise std::invalid_argument).
    DlogTable(FieldElement g, std::uint64_t s);

    /// Finds x in [0, s) with g^x = h, or absent if h is not in <g>.
    /// Throws std::domain_error for h = 0.
    DlogResult lookup(FieldElement h) const;

    FieldElement base() const { return g_; }
    std::uint64_t order() const { return s_; }
    std::uint64_t baby_count() const { return baby_.size(); }
    std::uint64_t giant_step_cap() const { return giant_cap_; }

private:
    FieldElement g_;
    std::uint64_t s_;
    std::uint64_t m_;          // ceil(sqrt(s))
    std::uint64_t giant_cap_;  // ceil(s/m) <= m
    FieldElement giant_;       // g^(-m)
    std::unordered_map<std::uint64_t, std::uint32_t> baby_;
};

}  // namespace expsum

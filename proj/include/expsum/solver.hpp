#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expsum/census.hpp"
#include "expsum/equation.hpp"

namespace expsum {

/// Relation between the prescribed search depth r and the smallest orbit s_m.
/// TruncatedLast: r <= s_m, the last axis is cut to r and a miss is
/// inconclusive. FullLast: r > s_m, the whole orbit fits and a miss is a
/// certificate of no solution.
enum class PlanCase { TruncatedLast, FullLast };

/// Search layout for one instance: largest-order term recovered by discrete
/// log lookups, every other exponent enumerated.
struct SolvePlan {
    std::uint64_t r_raw = 1;   ///< ceil(q^m (s_1...s_{m-1})^-2 delta^2), unclamped
    std::uint64_t depth = 1;   ///< min(r_raw, s_m), or s_m under full_scan
    PlanCase plan_case = PlanCase::TruncatedLast;
    double delta = 0.0;
    SearchRegion region;       ///< ranges actually enumerated
    std::uint64_t grid = 1;    ///< tuples of (x_2, ..., x_m) scanned
};

SolvePlan make_plan(const EquationInstance& inst,
                    DeltaPolicy delta = DeltaPolicy::sqrt_log_default(),
                    bool full_scan = false);

enum class SolveStatus { Found, NoSolution, Inconclusive };

struct SolveStats {
    std::uint64_t tuples_scanned = 0;  ///< (x_2..x_m) combinations visited
    std::uint64_t dlog_queries = 0;    ///< table lookups (h = 0 rows are skipped)
    std::uint64_t giant_steps = 0;     ///< multiplications inside all lookups
};

struct SolveResult {
    SolveStatus status = SolveStatus::Inconclusive;
    /// Exponents in the caller's term order; present iff status == Found.
    std::optional<std::vector<std::uint64_t>> solution;
    SolvePlan plan;
    SolveStats stats;
};

inline constexpr std::uint64_t kDefaultSolveWorkCap = 1ull << 28;

/// Deterministic search for the instance's own target b. Scans tuples with
/// x_2 fastest and x_m slowest and returns the first hit; misses are
/// NoSolution exactly when the region covered the whole last orbit.
SolveResult solve_classical(const EquationInstance& inst, const SolvePlan& plan,
                            std::uint64_t work_cap = kDefaultSolveWorkCap);

SolveResult solve_classical(const EquationInstance& inst,
                            DeltaPolicy delta = DeltaPolicy::sqrt_log_default(),
                            bool full_scan = false,
                            std::uint64_t work_cap = kDefaultSolveWorkCap);

}  // namespace expsum

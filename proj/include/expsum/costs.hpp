#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expsum/census.hpp"
#include "expsum/equation.hpp"
#include "expsum/grover.hpp"
#include "expsum/solver.hpp"

namespace expsum {

/// Where the marked-count estimate M comes from: the main term s1 s2 r / q or
/// the exact per-target census (counting caps permitting).
enum class MSource { MainTerm, Census };

/// Work comparison for one instance. Classical work counts giant steps; the
/// quantum side counts oracle queries over the (x_2, ..., x_m) grid. The
/// refined route (the t3_* fields) is populated only when its precondition
/// (s1 s2)^2 s3 > q^3 ln q holds, and exists for three-term instances only.
struct CostReport {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> orders;  ///< descending
    std::uint64_t r_plan = 1;           ///< ceil-form truncation depth, unclamped
    std::uint64_t depth = 1;            ///< min(r_plan, s_m)
    std::uint64_t classical_cost = 0;   ///< grid * ceil(sqrt(s1))
    std::uint64_t t2_grid = 0;          ///< prod of enumerated ranges
    std::uint64_t t2_queries = 0;       ///< ceil(sqrt(t2_grid))
    double t2_bound = 0.0;              ///< q^{m(m-1)/(2(2m-1))}; q^{3/5} at m = 3
    bool t2_chain_holds = true;         ///< t2_grid <= (s1^2 s2^2 depth)^{2/5}, advisory
    bool t3_applicable = false;
    std::uint64_t t3_r = 0;             ///< floor-form depth, clamped >= 1
    double m_est = 0.0;                 ///< s1 s2 t3_r / q
    MSource m_source = MSource::MainTerm;
    double m_value = 0.0;               ///< the M actually used (>= 1)
    std::uint64_t t3_queries = 0;       ///< ceil(sqrt(s2 t3_r / M))
    double t3_bound = 0.0;              ///< sqrt(q) (s1^2 s2^2 s3)^{-1/10}
    double t3_bound_stated = 0.0;       ///< q^2 (s1^2 s2^2 s3)^{-1/10}, printed for contrast
    std::string shor_cost;              ///< symbolic polylog entry per order-finding call
};

/// Builds the full comparison. The Census M source counts solutions for the
/// instance's own target over the (s1, s2, t3_r) region and can throw
/// CapacityError; M is floored at 1 so the query estimate stays defined.
CostReport cost_report(const EquationInstance& inst,
                       DeltaPolicy delta = DeltaPolicy::sqrt_log_default(),
                       MSource m_source = MSource::MainTerm,
                       std::uint64_t count_cap = kDefaultCountCap);

struct QuantumSolveResult {
    SolveStatus status = SolveStatus::Inconclusive;
    /// Exponents in the caller's term order; present iff status == Found.
    std::optional<std::vector<std::uint64_t>> solution;
    GroverRun run;
};

/// Simulated quantum search over the flattened enumeration grid of the plan
/// (x_2 fastest). Each oracle call is one query regardless of the inner
/// discrete-log work. With marked_hint the single-shot mode is used; without
/// it the unknown-count schedule runs and a fallback miss on a full-depth
/// region certifies NoSolution. Requires plan.grid <= kMaxSimulatedSpace.
QuantumSolveResult quantum_solve_simulated(
    const EquationInstance& inst, const SolvePlan& plan, std::uint64_t seed,
    std::optional<std::uint64_t> marked_hint = std::nullopt);

enum class ScanPolicy { MaxOrder, WorstCase };

struct ScanRow {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> orders;
    std::uint64_t r = 1;  ///< depth actually searched
    std::uint64_t classical_cost = 0;
    std::uint64_t t2_queries = 0;
    std::uint64_t t3_queries = 0;  ///< 0 when the refined route is inapplicable
    double t2_bound = 0.0;
    double t3_bound = 0.0;
};

struct ScanResult {
    ScanPolicy policy = ScanPolicy::MaxOrder;
    std::size_t m = 3;
    std::vector<ScanRow> rows;
    double classical_exponent = 0.0;
    double quantum_exponent = 0.0;
    double ratio = 0.0;
};

/// Cost formulas across primes. MaxOrder takes the smallest primitive root for
/// every term (s_i = q - 1); WorstCase takes a base whose order is the divisor
/// of q - 1 nearest q^{m/(2m-1)} in log distance, the regime with the largest
/// classical work. Exponents are least-squares slopes of ln(cost) vs ln(q).
/// Throws std::invalid_argument for fewer than 2 primes, composite entries, or
/// m outside {2, 3}.
ScanResult ratio_scan(const std::vector<std::uint64_t>& primes, ScanPolicy policy,
                      std::size_t m, DeltaPolicy delta = DeltaPolicy::sqrt_log_default());

/// Twelve primes spanning two decades whose q - 1 divisor structure stays
/// within 12% of both worst-case targets; the default scan input.
std::vector<std::uint64_t> default_scan_primes();

/// CSV with header q,s1,...,sm,r,classical_cost,t2_queries,t3_queries,
/// t2_bound,t3_bound and a fitted-exponent summary footer.
void write_scan_csv(std::ostream& os, const ScanResult& scan);

}  // namespace expsum

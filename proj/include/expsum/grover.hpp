#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace expsum {

/// Probability that measuring after `iterations` amplitude-amplification steps
/// on a uniform start state yields a marked index, for `marked` marked items
/// out of `space`. Exact closed form sin^2((2k+1) asin(sqrt(m/t))).
/// Throws std::domain_error when marked = 0 or marked > space or space = 0.
double grover_closed_form(std::uint64_t space, std::uint64_t marked,
                          std::uint64_t iterations);

/// floor(pi/4 sqrt(space/marked_hint)); the single-shot iteration count when
/// the marked count is trusted. marked_hint >= space gives 0.
std::uint64_t grover_iteration_count(std::uint64_t space, std::uint64_t marked_hint);

/// Outcome of one simulated search. oracle_queries counts amplification steps
/// plus one verification per measurement; fallback_checks counts the classical
/// scan taken after a timeout and is kept separate.
struct GroverRun {
    std::uint64_t space = 0;        ///< t
    std::uint64_t marked = 0;       ///< true marked count (simulator knowledge)
    std::uint64_t iterations = 0;   ///< amplification steps across all rounds
    double success_prob = 0.0;      ///< closed form of the last measurement taken
    std::uint64_t seed = 0;
    bool found = false;
    std::optional<std::uint64_t> index;
    std::uint64_t oracle_queries = 0;
    std::uint64_t rounds = 0;
    std::uint64_t fallback_checks = 0;
    bool fallback_used = false;
};

/// Largest search space the exact simulator accepts; beyond it the marked-set
/// enumeration is no longer reasonable and CapacityError is thrown.
inline constexpr std::uint64_t kMaxSimulatedSpace = 1'000'000;

/// One shot with the iteration count tuned to marked_hint (>= 1). The oracle
/// must be deterministic; the run is exact for the true marked set, so a wrong
/// hint simply lowers the success probability.
GroverRun grover_known_count(std::uint64_t space,
                             const std::function<bool(std::uint64_t)>& oracle,
                             std::uint64_t marked_hint, std::uint64_t seed);

/// Search with unknown marked count: rounds draw the iteration count uniformly
/// below a bound that grows by 6/5 per miss up to sqrt(space). After
/// min(ceil(4.5 sqrt(space)), space) oracle queries without a hit the search
/// falls back to a classical scan, which settles existence either way.
GroverRun bbht_search(std::uint64_t space,
                      const std::function<bool(std::uint64_t)>& oracle,
                      std::uint64_t seed);

}  // namespace expsum

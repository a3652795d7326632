#include "expsum/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "expsum/util.hpp"

namespace expsum {

namespace {

using u64 = std::uint64_t;

u64 uniform_below(std::mt19937_64& rng, u64 n) {
    if (n == 0) throw std::invalid_argument("empty sampling range");
    u64 rem = (UINT64_MAX % n) + 1;  // 2^64 mod n, with n dividing 2^64 -> 0
    if (rem == n) rem = 0;
    for (;;) {
        u64 x = rng();
        if (rem == 0 || x <= UINT64_MAX - rem) return x % n;
    }
}

double uniform_unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::vector<u64> enumerate_marked(u64 space, const std::function<bool(u64)>& oracle) {
    if (space == 0) throw std::domain_error("empty search space");
    if (space > kMaxSimulatedSpace) {
        throw CapacityError("search space too large for exact simulation");
    }
    std::vector<u64> marked;
    for (u64 x = 0; x < space; ++x) {
        if (oracle(x)) marked.push_back(x);
    }
    return marked;
}

// Exact measurement after k amplification steps: marked with the closed-form
// probability, then uniform within the chosen class. Returns the sampled index
// and stores the probability used.
u64 measure(u64 space, const std::vector<u64>& marked, u64 k, std::mt19937_64& rng,
            double& prob_out) {
    u64 m = marked.size();
    if (m == 0) {
        prob_out = 0.0;
        return uniform_below(rng, space);
    }
    if (m >= space) {
        prob_out = 1.0;
        return marked[uniform_below(rng, m)];
    }
    double p = grover_closed_form(space, m, k);
    prob_out = p;
    if (uniform_unit(rng) < p) return marked[uniform_below(rng, m)];
    u64 rank = uniform_below(rng, space - m);
    u64 lo = 0, hi = space - 1;
    while (lo < hi) {
        u64 mid = lo + (hi - lo) / 2;
        u64 below = std::upper_bound(marked.begin(), marked.end(), mid) - marked.begin();
        u64 unmarked_le = mid + 1 - below;
        if (unmarked_le >= rank + 1) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace

double grover_closed_form(std::uint64_t space, std::uint64_t marked,
                          std::uint64_t iterations) {
    if (space == 0) throw std::domain_error("empty search space");
    if (marked == 0) throw std::domain_error("closed form needs at least one marked item");
    if (marked > space) throw std::domain_error("more marked items than the space holds");
    if (marked == space) return 1.0;
    double theta = std::asin(std::sqrt(double(marked) / double(space)));
    double s = std::sin(double(2 * iterations + 1) * theta);
    return s * s;
}

std::uint64_t grover_iteration_count(std::uint64_t space, std::uint64_t marked_hint) {
    if (space == 0) throw std::domain_error("empty search space");
    if (marked_hint == 0) throw std::domain_error("marked_hint must be positive");
    if (marked_hint >= space) return 0;
    return static_cast<u64>(std::floor(std::numbers::pi / 4.0 *
                                       std::sqrt(double(space) / double(marked_hint))));
}

GroverRun grover_known_count(std::uint64_t space,
                             const std::function<bool(std::uint64_t)>& oracle,
                             std::uint64_t marked_hint, std::uint64_t seed) {
    std::vector<u64> marked = enumerate_marked(space, oracle);
    std::mt19937_64 rng(seed);
    u64 k = grover_iteration_count(space, marked_hint);
    GroverRun run;
    run.space = space;
    run.marked = marked.size();
    run.seed = seed;
    run.iterations = k;
    run.rounds = 1;
    run.oracle_queries = k + 1;  // k amplification steps, one verification
    u64 x = measure(space, marked, k, rng, run.success_prob);
    if (std::binary_search(marked.begin(), marked.end(), x)) {
        run.found = true;
        run.index = x;
    }
    return run;
}

GroverRun bbht_search(std::uint64_t space,
                      const std::function<bool(std::uint64_t)>& oracle,
                      std::uint64_t seed) {
    std::vector<u64> marked = enumerate_marked(space, oracle);
    std::mt19937_64 rng(seed);
    double root = std::sqrt(double(space));
    u64 cap = std::min<u64>(static_cast<u64>(std::ceil(4.5 * root)), space);
    GroverRun run;
    run.space = space;
    run.marked = marked.size();
    run.seed = seed;
    double bound = 1.0;
    while (run.oracle_queries < cap) {
        ++run.rounds;
        u64 j = uniform_below(rng, static_cast<u64>(std::ceil(bound)));
        u64 budget = cap - run.oracle_queries;  // >= 1 here
        if (j + 1 > budget) j = budget - 1;     // stay within the query budget
        run.iterations += j;
        run.oracle_queries += j + 1;
        u64 x = measure(space, marked, j, rng, run.success_prob);
        if (std::binary_search(marked.begin(), marked.end(), x)) {
            run.found = true;
            run.index = x;
            return run;
        }
        bound = std::min(1.2 * bound, root);
    }
    run.fallback_used = true;
    for (u64 x = 0; x < space; ++x) {
        ++run.fallback_checks;
        if (oracle(x)) {
            run.found = true;
            run.index = x;
            return run;
        }
    }
    return run;
}

}  // namespace expsum

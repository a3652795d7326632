#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "expsum/equation.hpp"

namespace expsum {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction, canonical: den > 0, gcd(|num|, den) = 1.
struct BigRational {
    BigInt num = 0;
    BigInt den = 1;

    static BigRational reduced(BigInt num, BigInt den);
    double to_double() const { return num.convert_to<double>() / den.convert_to<double>(); }
};

/// Deviation threshold scale: delta = sqrt(ln q) by default, or a fixed value.
struct DeltaPolicy {
    bool sqrt_log = true;
    double value = 0.0;

    static DeltaPolicy sqrt_log_default() { return {}; }
    static DeltaPolicy fixed(double v) { return {false, v}; }
    double resolve(std::uint64_t q) const {
        return sqrt_log ? std::sqrt(std::log(static_cast<double>(q))) : value;
    }
    bool operator==(const DeltaPolicy&) const = default;
};

inline constexpr std::uint64_t kDefaultCountCap = 1ull << 20;
inline constexpr std::uint64_t kDefaultBruteCap = 100'000'000;

/// Per-target row: N, the main term (prod_{i<m} s_i) r / q, the exact
/// deviation N - main, and the deviation flag |delta| >= threshold.
struct DensityReport {
    std::uint64_t b = 0;
    std::uint64_t count = 0;
    BigRational main;
    BigRational delta;
    double threshold = 0.0;
    bool exceptional = false;
};

struct CensusReport {
    SearchRegion region;
    double delta_param = 0.0;
    std::vector<DensityReport> per_b;  // ascending by encoding
    BigRational mean_square;           // E(r) = sum_b delta_b^2, exact
    BigInt mean_square_bound;          // q^(m-1) r
    bool mean_square_holds = false;
    std::uint64_t exceptional_count = 0;
    double exceptional_bound = 0.0;  // q / delta^2
    bool exceptional_holds = false;
    /// Sufficient-density comparison s1 s2 / q vs sqrt(q log(q) / s3) for
    /// m = 3, reported with s3 and with the (s3 - 2) variant (NaN otherwise).
    double density_lhs = 0.0;
    double density_rhs_s3 = 0.0;
    double density_rhs_s3_minus_2 = 0.0;
};

/// Exact N for every b at once: per-term value indicators convolved over
/// (F_q, +). Sparse direct product for extension fields and small primes,
/// length-padded complex FFT for prime fields at scale.
/// Throws CapacityError when q > count_cap or the convolution would not fit.
std::vector<std::uint64_t> count_all_b(const EquationInstance& inst, const SearchRegion& region,
                                       std::uint64_t count_cap = kDefaultCountCap);

/// Independent oracle: plain enumeration of the whole region. Optionally
/// collects the solution assignments (caller's term order) per target.
/// Throws CapacityError when the region volume exceeds brute_cap.
std::vector<std::uint64_t> count_brute(
    const EquationInstance& inst, const SearchRegion& region,
    std::uint64_t brute_cap = kDefaultBruteCap,
    std::vector<std::vector<std::vector<std::uint64_t>>>* solutions = nullptr);

/// Character-sum route for one target:
/// N = (1/q) sum_mu psi(-b mu) prod_k T_k(mu). O(q (s_1+...+r)) work.
double count_via_charsum(const EquationInstance& inst, FieldElement b, const SearchRegion& region);

/// Character-sum route for all targets at once (shares the per-mu products).
std::vector<double> count_via_charsum_all_b(const EquationInstance& inst,
                                            const SearchRegion& region);

/// T_k(mu) = sum_{x < range(k)} psi(a_k mu g_k^x) for the k-th sorted term.
UnitComplex term_character_sum(const EquationInstance& inst, const SearchRegion& region,
                               std::size_t sorted_k, FieldElement mu);

/// E(r) by the character-sum product formula
/// (1/q) sum_{mu != 0} prod_k |T_k(mu)|^2; cross-route check for the exact E.
double mean_square_deviation_charsum(const EquationInstance& inst, const SearchRegion& region);

/// Full density verdict for every target b.
CensusReport census(const EquationInstance& inst, double delta, const SearchRegion& region,
                    std::uint64_t count_cap = kDefaultCountCap);

/// (|sum_{x<s} psi(a mu g^x)|, sqrt(q)). Requires exact order s of g and
/// mu != 0 (throws std::domain_error), nonzero a (std::invalid_argument).
std::pair<double, double> weil_check(FieldElement a, FieldElement g, std::uint64_t s,
                                     FieldElement mu);

/// Smallest useful truncation depth: r_raw = ceil(q^m (prod_{i<m} s_i)^-2 delta^2),
/// clamped into [1, s_m] for the region. corollary_applicable records whether
/// q^m (prod_{i<m} s_i)^-2 ln q < s_m, i.e. whether some admissible r exists.
struct RegionChoice {
    SearchRegion region;
    std::uint64_t r_raw = 1;
    bool corollary_applicable = false;
};
RegionChoice min_r(const EquationInstance& inst, double delta);

/// CSV: header b,N,main_num,main_den,delta_num,delta_den,threshold,exceptional.
void write_census_csv(std::ostream& os, const CensusReport& report);

}  // namespace expsum

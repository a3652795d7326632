#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expsum/field.hpp"
#include "expsum/order.hpp"

namespace expsum {

/// One summand a * g^x with the verified order of g.
struct Term {
    FieldElement coeff;
    FieldElement base;
    OrderInfo order;
};

/// Instance of a1 g1^x1 + ... + am gm^xm = b over one field. Terms keep the
/// caller's order; size-sorted access is provided for the search algorithms,
/// which expect orders descending (stable on ties).
class EquationInstance {
public:
    EquationInstance(const Field& field,
                     std::vector<std::pair<std::uint64_t, std::uint64_t>> terms_enc,
                     std::uint64_t b_enc);

    const Field& field() const { return *field_; }
    std::size_t term_count() const { return terms_.size(); }
    const Term& term(std::size_t i) const { return terms_[i]; }
    FieldElement target() const { return b_; }

    /// Permutation sorting terms by descending order, stable on ties.
    const std::vector<std::size_t>& sorted_perm() const { return perm_; }
    const Term& sorted_term(std::size_t k) const { return terms_[perm_[k]]; }
    /// s_{k+1} in the descending convention (k zero-based).
    std::uint64_t sorted_order(std::size_t k) const { return terms_[perm_[k]].order.order; }
    /// Smallest order s_m; the truncated axis of every search region.
    std::uint64_t last_order() const { return sorted_order(terms_.size() - 1); }

private:
    const Field* field_;
    std::vector<Term> terms_;
    FieldElement b_;
    std::vector<std::size_t> perm_;
};

/// Truncated product region X_1 x ... x X_{m-1} x X_m(r) in the descending
/// convention; 1 <= r <= s_m.
struct SearchRegion {
    std::uint64_t r = 1;
    std::vector<std::uint64_t> full_sizes;  // descending

    std::uint64_t range(std::size_t k) const {
        return k + 1 == full_sizes.size() ? r : full_sizes[k];
    }
};

/// Validates 1 <= r <= s_m and snapshots the sorted sizes.
SearchRegion make_region(const EquationInstance& inst, std::uint64_t r);

/// Exact check of one assignment (caller's term order). Entries must satisfy
/// x_i < s_i; out-of-range input throws std::domain_error.
bool verify_solution(const EquationInstance& inst, const std::vector<std::uint64_t>& xs);

}  // namespace expsum

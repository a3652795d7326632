#pragma once

#include <cstdint>

#include "expsum/factor.hpp"
#include "expsum/field.hpp"

namespace expsum {

/// A group element with its verified multiplicative order.
struct OrderInfo {
    FieldElement element;
    std::uint64_t order = 0;
};

/// Exact order of g in F_q^*, computed by stripping primes of q-1.
/// q_minus_1 must be factorize(q-1) for g's field. Throws std::domain_error
/// for g = 0. The returned order always divides q-1 (checked).
OrderInfo multiplicative_order(FieldElement g, const Factorization& q_minus_1);
OrderInfo multiplicative_order(FieldElement g);

}  // namespace expsum

#include "expsum/order.hpp"

#include <stdexcept>

namespace expsum {

OrderInfo multiplicative_order(FieldElement g, const Factorization& q_minus_1) {
    if (g.field == nullptr) throw std::invalid_argument("element has no field");
    const Field& f = *g.field;
    if (g.is_zero()) throw std::domain_error("order of zero is undefined");
    if (q_minus_1.n != f.size() - 1) {
        throw std::invalid_argument("factorization does not match the group order");
    }
    std::uint64_t s = f.size() - 1;
    for (auto& [p, e] : q_minus_1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (s % p == 0 && f.pow(g, s / p).enc == 1) {
                s /= p;
            } else {
                break;
            }
        }
    }
    if (f.pow(g, s).enc != 1 || (f.size() - 1) % s != 0) {
        throw std::logic_error("order computation failed Lagrange check");
    }
    return {g, s};
}

OrderInfo multiplicative_order(FieldElement g) {
    if (g.field == nullptr) throw std::invalid_argument("element has no field");
    return multiplicative_order(g, factorize(g.field->size() - 1));
}

}  // namespace expsum

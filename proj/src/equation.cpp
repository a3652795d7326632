#include "expsum/equation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace expsum {

EquationInstance::EquationInstance(const Field& field,
                                   std::vector<std::pair<std::uint64_t, std::uint64_t>> terms_enc,
                                   std::uint64_t b_enc)
    : field_(&field), b_(field.element(b_enc)) {
    if (terms_enc.empty()) throw std::invalid_argument("instance needs at least one term");
    Factorization f = factorize(field.size() - 1);
    terms_.reserve(terms_enc.size());
    for (auto& [a_enc, g_enc] : terms_enc) {
        FieldElement a = field.element(a_enc);
        FieldElement g = field.element(g_enc);
        if (a.is_zero()) throw std::invalid_argument("term coefficient must be nonzero");
        if (g.is_zero()) throw std::invalid_argument("term base must be nonzero");
        terms_.push_back({a, g, multiplicative_order(g, f)});
    }
    perm_.resize(terms_.size());
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::stable_sort(perm_.begin(), perm_.end(), [&](std::size_t i, std::size_t j) {
        return terms_[i].order.order > terms_[j].order.order;
    });
}

SearchRegion make_region(const EquationInstance& inst, std::uint64_t r) {
    if (r < 1 || r > inst.last_order()) {
        throw std::invalid_argument("region depth r must lie in [1, s_last]");
    }
    SearchRegion region;
    region.r = r;
    region.full_sizes.reserve(inst.term_count());
    for (std::size_t k = 0; k < inst.term_count(); ++k) {
        region.full_sizes.push_back(inst.sorted_order(k));
    }
    return region;
}

bool verify_solution(const EquationInstance& inst, const std::vector<std::uint64_t>& xs) {
    if (xs.size() != inst.term_count()) {
        throw std::domain_error("assignment length does not match term count");
    }
    const Field& f = inst.field();
    FieldElement sum = f.zero();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Term& t = inst.term(i);
        if (xs[i] >= t.order.order) {
            throw std::domain_error("assignment entry outside [0, order)");
        }
        sum = f.add(sum, f.mul(t.coeff, f.pow(t.base, xs[i])));
    }
    return sum == inst.target();
}

}  // namespace expsum

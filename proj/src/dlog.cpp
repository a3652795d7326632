#include "expsum/dlog.hpp"

#include <cmath>
#include <stdexcept>

#include "expsum/util.hpp"

namespace expsum {

DlogTable::DlogTable(FieldElement g, std::uint64_t s) : g_(g), s_(s) {
    if (g.field == nullptr) throw std::invalid_argument("base has no field");
    const Field& f = *g.field;
    if (s == 0) throw std::invalid_argument("subgroup order must be positive");
    if (g.is_zero()) throw std::domain_error("base must be a unit");
    if (f.pow(g, s).enc != 1) throw std::invalid_argument("base order mismatch: g^s != 1");
    m_ = isqrt_ceil(s);
    if (m_ == 0) m_ = 1;
    giant_cap_ = (s + m_ - 1) / m_;
    baby_.reserve(m_ * 2);
    FieldElement v = f.one();
    for (std::uint64_t j = 0; j < m_; ++j) {
        auto [it, inserted] = baby_.emplace(v.enc, static_cast<std::uint32_t>(j));
        if (!inserted) throw std::invalid_argument("base order mismatch: order of g is below s");
        v = f.mul(v, g);
    }
    giant_ = f.inv(f.pow(g, m_));
}

DlogResult DlogTable::lookup(FieldElement h) const {
    const Field& f = *g_.field;
    if (h.field == nullptr || !same_field(f, *h.field)) {
        throw std::invalid_argument("query element from a different field");
    }
    if (h.is_zero()) throw std::domain_error("zero is not in any multiplicative subgroup");
    DlogResult res;
    FieldElement y = h;
    for (std::uint64_t i = 0; i < giant_cap_; ++i) {
        auto it = baby_.find(y.enc);
        if (it != baby_.end()) {
            std::uint64_t x = i * m_ + it->second;
            res.exponent = x >= s_ ? x - s_ : x;
            return res;
        }
        y = f.mul(y, giant_);
        ++res.giant_steps;
    }
    return res;
}

}  // namespace expsum

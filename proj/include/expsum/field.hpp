#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace expsum {

/// Complex value on (or numerically near) the unit circle.
using UnitComplex = std::complex<double>;

class Field;

/// Value handle into a specific Field. enc is the base-p digit packing of the
/// polynomial representative: enc = sum_i c_i p^i with c_0 the constant term.
struct FieldElement {
    std::uint64_t enc = 0;
    const Field* field = nullptr;

    bool is_zero() const { return enc == 0; }
};

/// F_q with q = p^nu, elements reduced modulo a monic irreducible modulus.
/// Immutable after construction; all queries are thread-safe.
class Field {
public:
    /// Prime field F_p.
    explicit Field(std::uint64_t p);
    /// Extension field with the lexicographically first monic irreducible modulus.
    Field(std::uint64_t p, unsigned nu);
    /// Extension field with an explicit monic modulus, coefficients ascending
    /// (size nu+1, modulus[nu] == 1).
    Field(std::uint64_t p, unsigned nu, std::vector<std::uint64_t> modulus);

    /// Accepts "p", "p^nu" or "p^nu/c0,c1,...,cnu".
    static Field parse(std::string_view spec);
    std::string spec_string() const;

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return nu_; }
    std::uint64_t size() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    FieldElement element(std::uint64_t enc) const;
    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }
    std::vector<std::uint64_t> digits(FieldElement a) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    /// Throws std::domain_error for a = 0.
    FieldElement inv(FieldElement a) const;
    /// 0^0 = 1.
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    /// Tr(a) = sum_{i<nu} a^(p^i), returned as its value in [0, p).
    std::uint64_t trace(FieldElement a) const;
    /// psi(u) = exp(2 pi i Tr(u) / p).
    UnitComplex psi(FieldElement u) const;
    /// psi(mu * x).
    UnitComplex additive_character(FieldElement mu, FieldElement x) const;

    bool has_log_tables() const { return !alog_.empty(); }
    /// Generator backing the log tables (only when has_log_tables()).
    FieldElement table_generator() const;

private:
    std::uint64_t p_ = 0;
    unsigned nu_ = 1;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> modulus_;

    std::vector<std::uint32_t> log_;   // log_[enc] for enc in [1, q)
    std::vector<std::uint32_t> alog_;  // alog_[k] = g^k for k in [0, q-1)
    std::vector<std::uint32_t> trace_table_;
    std::vector<UnitComplex> roots_;   // p-th roots of unity, when p is small

    void init();
    void check(FieldElement a) const;
    std::uint64_t mul_generic(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow_generic(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t trace_generic(std::uint64_t a) const;
};

bool same_field(const Field& a, const Field& b);

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);
FieldElement operator*(FieldElement a, FieldElement b);
bool operator==(FieldElement a, FieldElement b);
bool operator!=(FieldElement a, FieldElement b);
FieldElement inv(FieldElement a);
FieldElement pow(FieldElement a, std::uint64_t e);

}  // namespace expsum

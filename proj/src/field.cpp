#include "expsum/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "expsum/factor.hpp"

namespace expsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTableLimit = 1u << 16;   // log/antilog tables up to this q
constexpr u64 kRootLimit = 1u << 21;    // precomputed roots of unity up to this p

// --- dense polynomials over F_p, coefficients ascending ---
using Poly = std::vector<u64>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = static_cast<u64>((u128(a[i]) * b[j] + c[i + j]) % p);
        }
    }
    // reduce modulo monic f
    std::size_t n = f.size() - 1;
    for (std::size_t k = c.size(); k-- > n;) {
        u64 top = c[k];
        if (top == 0) continue;
        c[k] = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u64 sub = static_cast<u64>(u128(top) * f[i] % p);
            c[k - n + i] = (c[k - n + i] + p - sub) % p;
        }
    }
    c.resize(n);
    poly_trim(c);
    return c;
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
    std::size_t n = f.size() - 1;
    for (std::size_t k = a.size(); k-- > n;) {
        u64 top = a[k];
        if (top == 0) continue;
        a[k] = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u64 sub = static_cast<u64>(u128(top) * f[i] % p);
            a[k - n + i] = (a[k - n + i] + p - sub) % p;
        }
    }
    poly_trim(a);
    return a;
}

u64 inv_mod_prime(u64 a, u64 p) {
    // Fermat; p prime, a != 0
    u64 r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = static_cast<u64>(u128(r) * a % p);
        a = static_cast<u64>(u128(a) * a % p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        u64 lead_inv = inv_mod_prime(b.back(), p);
        Poly bm = b;
        for (auto& c : bm) c = static_cast<u64>(u128(c) * lead_inv % p);
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod f by k successive p-th powers
Poly frobenius_power(const Poly& f, u64 p, unsigned k) {
    Poly x{0, 1};
    Poly r = x;
    for (unsigned i = 0; i < k; ++i) r = poly_powmod(std::move(r), p, f, p);
    return r;
}

bool poly_is_irreducible(const Poly& f, u64 p) {
    unsigned n = static_cast<unsigned>(f.size() - 1);
    if (n == 1) return true;
    if (f[0] == 0) return false;  // root at 0
    if (n <= 3 && p <= (1u << 20)) {
        // degree 2 or 3: irreducible iff no root
        for (u64 c = 0; c < p; ++c) {
            u64 v = 0;
            for (std::size_t i = f.size(); i-- > 0;) {
                v = static_cast<u64>((u128(v) * c + f[i]) % p);
            }
            if (v == 0) return false;
        }
        return true;
    }
    // Rabin: x^(p^n) == x mod f, and gcd(x^(p^(n/l)) - x, f) = 1 for prime l | n
    Poly x{0, 1};
    Poly xq = frobenius_power(f, p, n);
    if (xq != x) return false;
    for (u64 l : factorize(n).primes()) {
        Poly g = frobenius_power(f, p, n / static_cast<unsigned>(l));
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        poly_trim(g);
        Poly d = poly_gcd(f, std::move(g), p);
        if (d.size() != 1) return false;
    }
    return true;
}

u64 checked_pow_u64(u64 p, unsigned nu) {
    u64 q = 1;
    for (unsigned i = 0; i < nu; ++i) {
        if (q > UINT64_MAX / p) throw std::invalid_argument("field size overflows 64 bits");
        q *= p;
    }
    return q;
}

}  // namespace

Field::Field(std::uint64_t p) : Field(p, 1) {}

Field::Field(std::uint64_t p, unsigned nu) : p_(p), nu_(nu) {
    if (nu_ == 0) throw std::invalid_argument("field degree must be positive");
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    q_ = checked_pow_u64(p_, nu_);
    if (nu_ == 1) {
        modulus_ = {0, 1};  // t
    } else {
        // first irreducible monic modulus in encoding order of (c0,...,c_{nu-1})
        for (u64 k = 0;; ++k) {
            if (k >= q_) throw std::logic_error("no irreducible modulus found");
            Poly f(nu_ + 1, 0);
            u64 v = k;
            for (unsigned i = 0; i < nu_; ++i) {
                f[i] = v % p_;
                v /= p_;
            }
            f[nu_] = 1;
            if (poly_is_irreducible(f, p_)) {
                modulus_ = f;
                break;
            }
        }
    }
    init();
}

Field::Field(std::uint64_t p, unsigned nu, std::vector<std::uint64_t> modulus)
    : p_(p), nu_(nu), modulus_(std::move(modulus)) {
    if (nu_ == 0) throw std::invalid_argument("field degree must be positive");
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    q_ = checked_pow_u64(p_, nu_);
    if (modulus_.size() != nu_ + 1) throw std::invalid_argument("modulus must have degree nu");
    if (modulus_[nu_] != 1) throw std::invalid_argument("modulus must be monic");
    for (u64 c : modulus_) {
        if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (nu_ > 1 && !poly_is_irreducible(modulus_, p_)) {
        throw std::invalid_argument("modulus is reducible");
    }
    init();
}

void Field::init() {
    if (nu_ > 1 && q_ <= (1u << 20)) {
        trace_table_.resize(q_);
        for (u64 e = 0; e < q_; ++e) {
            trace_table_[e] = static_cast<std::uint32_t>(trace_generic(e));
        }
    }
    if (p_ <= kRootLimit) {
        roots_.resize(p_);
        for (u64 k = 0; k < p_; ++k) {
            roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(p_));
        }
    }
    if (q_ > kTableLimit || q_ < 3) return;

    Factorization f = factorize(q_ - 1);
    std::vector<u64> cofactors;
    for (u64 l : f.primes()) cofactors.push_back((q_ - 1) / l);
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ q_);
    std::uniform_int_distribution<u64> pick(1, q_ - 1);
    u64 gen = 0;
    for (;;) {
        u64 g = pick(rng);
        bool ok = true;
        for (u64 e : cofactors) {
            if (pow_generic(g, e) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = g;
            break;
        }
    }
    alog_.resize(q_ - 1);
    log_.assign(q_, 0);
    u64 v = 1;
    for (u64 k = 0; k < q_ - 1; ++k) {
        alog_[k] = static_cast<std::uint32_t>(v);
        log_[v] = static_cast<std::uint32_t>(k);
        v = mul_generic(v, gen);
    }
    if (v != 1) throw std::logic_error("generator order check failed");
}

Field Field::parse(std::string_view spec) {
    auto bad = [&](std::string_view token) {
        throw std::invalid_argument("invalid field spec near '" + std::string(token) + "'");
    };
    auto parse_u64 = [&](std::string_view tok) -> u64 {
        if (tok.empty()) bad(tok);
        u64 v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') bad(tok);
            if (v > (UINT64_MAX - (c - '0')) / 10) bad(tok);
            v = v * 10 + (c - '0');
        }
        return v;
    };
    std::size_t caret = spec.find('^');
    if (caret == std::string_view::npos) return Field(parse_u64(spec));
    std::size_t slash = spec.find('/');
    u64 p = parse_u64(spec.substr(0, caret));
    std::string_view nu_tok =
        spec.substr(caret + 1, slash == std::string_view::npos ? spec.npos : slash - caret - 1);
    u64 nu = parse_u64(nu_tok);
    if (nu == 0 || nu > 63) bad(nu_tok);
    if (slash == std::string_view::npos) return Field(p, static_cast<unsigned>(nu));
    std::vector<u64> coeffs;
    std::string_view rest = spec.substr(slash + 1);
    while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        coeffs.push_back(parse_u64(tok));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (coeffs.size() != nu + 1) bad(spec.substr(slash + 1));
    return Field(p, static_cast<unsigned>(nu), std::move(coeffs));
}

std::string Field::spec_string() const {
    if (nu_ == 1) return std::to_string(p_);
    std::string s = std::to_string(p_) + "^" + std::to_string(nu_) + "/";
    for (unsigned i = 0; i <= nu_; ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
    }
    return s;
}

FieldElement Field::element(std::uint64_t enc) const {
    if (enc >= q_) throw std::invalid_argument("element encoding out of range");
    return {enc, this};
}

std::vector<std::uint64_t> Field::digits(FieldElement a) const {
    check(a);
    std::vector<u64> d(nu_);
    u64 v = a.enc;
    for (unsigned i = 0; i < nu_; ++i) {
        d[i] = v % p_;
        v /= p_;
    }
    return d;
}

void Field::check(FieldElement a) const {
    if (a.field == nullptr || !same_field(*this, *a.field)) {
        throw std::invalid_argument("element does not belong to this field");
    }
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    if (nu_ == 1) {
        u64 s = a.enc + b.enc;  // p < 2^63 is not guaranteed; avoid overflow
        if (s < a.enc || s >= p_) s -= p_;
        return {s, this};
    }
    u64 out = 0, mult = 1, x = a.enc, y = b.enc;
    for (unsigned i = 0; i < nu_; ++i) {
        u64 d = x % p_ + y % p_;
        if (d >= p_) d -= p_;
        out += d * mult;
        mult *= p_;
        x /= p_;
        y /= p_;
    }
    return {out, this};
}

FieldElement Field::neg(FieldElement a) const {
    check(a);
    if (nu_ == 1) return {a.enc == 0 ? 0 : p_ - a.enc, this};
    u64 out = 0, mult = 1, x = a.enc;
    for (unsigned i = 0; i < nu_; ++i) {
        u64 d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
        x /= p_;
    }
    return {out, this};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

std::uint64_t Field::mul_generic(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (nu_ == 1) return static_cast<u64>(u128(a) * b % p_);
    Poly pa(nu_), pb(nu_);
    for (unsigned i = 0; i < nu_; ++i) {
        pa[i] = a % p_;
        a /= p_;
        pb[i] = b % p_;
        b /= p_;
    }
    poly_trim(pa);
    poly_trim(pb);
    Poly pc = poly_mulmod(pa, pb, modulus_, p_);
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < nu_; ++i) {
        out += (i < pc.size() ? pc[i] : 0) * mult;
        mult *= p_;
    }
    return out;
}

std::uint64_t Field::pow_generic(std::uint64_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (e >= q_ - 1 && q_ > 1) e %= q_ - 1;
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul_generic(r, a);
        a = mul_generic(a, a);
        e >>= 1;
    }
    return r;
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    if (!alog_.empty()) {
        if (a.enc == 0 || b.enc == 0) return {0, this};
        u64 k = log_[a.enc] + log_[b.enc];
        if (k >= q_ - 1) k -= q_ - 1;
        return {alog_[k], this};
    }
    return {mul_generic(a.enc, b.enc), this};
}

FieldElement Field::inv(FieldElement a) const {
    check(a);
    if (a.enc == 0) throw std::domain_error("inverse of zero");
    if (!alog_.empty()) {
        u64 k = log_[a.enc];
        return {alog_[k == 0 ? 0 : q_ - 1 - k], this};
    }
    if (nu_ == 1) return {inv_mod_prime(a.enc, p_), this};
    return {pow_generic(a.enc, q_ - 2), this};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
    check(a);
    if (!alog_.empty()) {
        if (a.enc == 0) return {e == 0 ? 1ull : 0ull, this};
        u64 k = static_cast<u64>(log_[a.enc]) * (e % (q_ - 1)) % (q_ - 1);
        return {alog_[k], this};
    }
    return {pow_generic(a.enc, e), this};
}

std::uint64_t Field::trace_generic(std::uint64_t a) const {
    if (nu_ == 1) return a;
    FieldElement acc{0, this};
    FieldElement v{a, this};
    for (unsigned i = 0; i < nu_; ++i) {
        acc = add(acc, v);
        if (i + 1 < nu_) v = {pow_generic(v.enc, p_), this};
    }
    if (acc.enc >= p_) throw std::logic_error("trace left the prime subfield");
    return acc.enc;
}

std::uint64_t Field::trace(FieldElement a) const {
    check(a);
    if (nu_ == 1) return a.enc;
    if (!trace_table_.empty()) return trace_table_[a.enc];
    return trace_generic(a.enc);
}

UnitComplex Field::psi(FieldElement u) const {
    u64 t = trace(u);
    if (!roots_.empty()) return roots_[t];
    return std::polar(1.0, 2.0 * std::numbers::pi * double(t) / double(p_));
}

UnitComplex Field::additive_character(FieldElement mu, FieldElement x) const {
    return psi(mul(mu, x));
}

FieldElement Field::table_generator() const {
    if (alog_.empty()) throw std::logic_error("field has no log tables");
    return {alog_[1], this};
}

bool same_field(const Field& a, const Field& b) {
    if (&a == &b) return true;
    return a.characteristic() == b.characteristic() && a.degree() == b.degree() &&
           a.modulus() == b.modulus();
}

namespace {
const Field& common_field(FieldElement a, FieldElement b) {
    if (a.field == nullptr || b.field == nullptr) {
        throw std::invalid_argument("element has no field");
    }
    if (!same_field(*a.field, *b.field)) {
        throw std::invalid_argument("elements belong to different fields");
    }
    return *a.field;
}
}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) { return common_field(a, b).add(a, b); }
FieldElement operator-(FieldElement a, FieldElement b) { return common_field(a, b).sub(a, b); }
FieldElement operator-(FieldElement a) {
    if (a.field == nullptr) throw std::invalid_argument("element has no field");
    return a.field->neg(a);
}
FieldElement operator*(FieldElement a, FieldElement b) { return common_field(a, b).mul(a, b); }
bool operator==(FieldElement a, FieldElement b) {
    common_field(a, b);
    return a.enc == b.enc;
}
bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }
FieldElement inv(FieldElement a) {
    if (a.field == nullptr) throw std::invalid_argument("element has no field");
    return a.field->inv(a);
}
FieldElement pow(FieldElement a, std::uint64_t e) {
    if (a.field == nullptr) throw std::invalid_argument("element has no field");
    return a.field->pow(a, e);
}

}  // namespace expsum

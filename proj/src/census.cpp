#include "expsum/census.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "expsum/parallel.hpp"
#include "expsum/util.hpp"

namespace expsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Cplx = std::complex<double>;

// enc values a_k * g_k^x for x < range(k), per sorted term
std::vector<std::vector<u64>> orbit_values(const EquationInstance& inst,
                                           const SearchRegion& region) {
    const Field& f = inst.field();
    std::vector<std::vector<u64>> vals(inst.term_count());
    for (std::size_t k = 0; k < inst.term_count(); ++k) {
        const Term& t = inst.sorted_term(k);
        u64 range = region.range(k);
        vals[k].reserve(range);
        FieldElement v = t.coeff;
        for (u64 x = 0; x < range; ++x) {
            vals[k].push_back(v.enc);
            v = f.mul(v, t.base);
        }
    }
    return vals;
}

void fft_radix2(std::vector<Cplx>& a, bool inverse) {
    std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / double(len) * (inverse ? -1.0 : 1.0);
        Cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Cplx w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                Cplx u = a[i + j];
                Cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) x /= double(n);
    }
}

// Exact additive-group convolution of two count vectors over F_q.
std::vector<u64> group_convolve(const std::vector<u64>& a, const std::vector<u64>& b,
                                const Field& f) {
    u64 q = f.size();
    std::vector<u64> nz_a, nz_b;
    for (u64 i = 0; i < q; ++i) {
        if (a[i]) nz_a.push_back(i);
    }
    for (u64 i = 0; i < q; ++i) {
        if (b[i]) nz_b.push_back(i);
    }
    u128 sparse_work = u128(nz_a.size()) * nz_b.size();
    bool use_fft = f.degree() == 1 && sparse_work > (1u << 25);
    if (!use_fft) {
        if (sparse_work > (u128(1) << 33)) {
            throw CapacityError("group convolution too large for the direct route");
        }
        std::vector<u64> out(q, 0);
        if (f.degree() == 1) {
            for (u64 i : nz_a) {
                for (u64 j : nz_b) {
                    u64 s = i + j;
                    if (s >= q) s -= q;
                    out[s] += a[i] * b[j];
                }
            }
        } else {
            for (u64 i : nz_a) {
                FieldElement ei = f.element(i);
                for (u64 j : nz_b) {
                    out[f.add(ei, f.element(j)).enc] += a[i] * b[j];
                }
            }
        }
        return out;
    }
    // cyclic convolution over Z_q via zero-padded linear convolution
    std::size_t want = 2 * q - 1;
    std::size_t n = 1;
    while (n < want) n <<= 1;
    std::vector<Cplx> fa(n, 0.0), fb(n, 0.0);
    for (u64 i = 0; i < q; ++i) fa[i] = double(a[i]);
    for (u64 i = 0; i < q; ++i) fb[i] = double(b[i]);
    fft_radix2(fa, false);
    fft_radix2(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_radix2(fa, true);
    std::vector<u64> out(q, 0);
    for (std::size_t i = 0; i < want; ++i) {
        double re = fa[i].real();
        double rounded = std::round(re);
        if (std::abs(re - rounded) > 1e-3 || rounded < -0.5) {
            throw std::logic_error("convolution rounding drifted; counts not trustworthy");
        }
        out[i % q] += static_cast<u64>(rounded);
    }
    return out;
}

}  // namespace

BigRational BigRational::reduced(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {std::move(num), std::move(den)};
}

std::vector<std::uint64_t> count_all_b(const EquationInstance& inst, const SearchRegion& region,
                                       std::uint64_t count_cap) {
    const Field& f = inst.field();
    u64 q = f.size();
    if (q > count_cap) throw CapacityError("field too large for counting (raise the count cap)");
    auto vals = orbit_values(inst, region);
    std::vector<u64> acc(q, 0);
    for (u64 e : vals[0]) acc[e] += 1;
    for (std::size_t k = 1; k < vals.size(); ++k) {
        std::vector<u64> d(q, 0);
        for (u64 e : vals[k]) d[e] += 1;
        acc = group_convolve(acc, d, f);
    }
    u128 expect = 1;
    for (std::size_t k = 0; k < inst.term_count(); ++k) expect *= region.range(k);
    u128 got = 0;
    for (u64 v : acc) got += v;
    if (got != expect) throw std::logic_error("convolution mass check failed");
    return acc;
}

std::vector<std::uint64_t> count_brute(
    const EquationInstance& inst, const SearchRegion& region, std::uint64_t brute_cap,
    std::vector<std::vector<std::vector<std::uint64_t>>>* solutions) {
    const Field& f = inst.field();
    u64 q = f.size();
    std::size_t m = inst.term_count();
    u128 volume = 1;
    for (std::size_t k = 0; k < m; ++k) volume *= region.range(k);
    if (volume > brute_cap) throw CapacityError("region volume exceeds the enumeration cap");

    auto vals = orbit_values(inst, region);
    bool prime = f.degree() == 1;
    // nesting: x_1 blocked outermost, then x_m, ..., innermost x_2
    std::vector<std::size_t> dims;  // recursion order after dim 0
    for (std::size_t k = m; k-- > 1;) dims.push_back(k);

    auto run_span = [&](u64 x0_begin, u64 x0_end, std::vector<u64>& counts) {
        auto descend = [&](auto&& self, std::size_t di, u64 partial) -> void {
            if (di == dims.size()) {
                counts[partial] += 1;
                return;
            }
            std::size_t k = dims[di];
            u64 range = region.range(k);
            const std::vector<u64>& vk = vals[k];
            if (prime && di + 1 == dims.size()) {
                for (u64 x = 0; x < range; ++x) {
                    u64 s = partial + vk[x];
                    if (s >= q) s -= q;
                    counts[s] += 1;
                }
                return;
            }
            for (u64 x = 0; x < range; ++x) {
                u64 next = prime ? (partial + vk[x] >= q ? partial + vk[x] - q : partial + vk[x])
                                 : f.add(f.element(partial), f.element(vk[x])).enc;
                self(self, di + 1, next);
            }
        };
        for (u64 x0 = x0_begin; x0 < x0_end; ++x0) {
            descend(descend, 0, vals[0][x0]);
        }
    };

    u64 range0 = region.range(0);
    std::vector<u64> counts(q, 0);
    bool want_solutions = solutions != nullptr;
    if (want_solutions || q > (1u << 16) || volume < (1u << 16)) {
        // sequential; solution gathering keeps enumeration order deterministic
        std::vector<std::vector<u64>> flat(want_solutions ? q : 0);
        // re-run with per-target flattened sorted-order assignments
        std::vector<u64> xs(m, 0);
        auto descend = [&](auto&& self, std::size_t di, u64 partial) -> void {
            if (di == dims.size()) {
                counts[partial] += 1;
                if (want_solutions) {
                    for (std::size_t k = 0; k < m; ++k) flat[partial].push_back(xs[k]);
                }
                return;
            }
            std::size_t k = dims[di];
            u64 range = region.range(k);
            const std::vector<u64>& vk = vals[k];
            for (u64 x = 0; x < range; ++x) {
                xs[k] = x;
                u64 next = prime ? (partial + vk[x] >= q ? partial + vk[x] - q : partial + vk[x])
                                 : f.add(f.element(partial), f.element(vk[x])).enc;
                self(self, di + 1, next);
            }
        };
        for (u64 x0 = 0; x0 < range0; ++x0) {
            xs[0] = x0;
            descend(descend, 0, vals[0][x0]);
        }
        if (want_solutions) {
            const auto& perm = inst.sorted_perm();
            solutions->assign(q, {});
            for (u64 b = 0; b < q; ++b) {
                std::size_t nsol = flat[b].size() / m;
                (*solutions)[b].reserve(nsol);
                for (std::size_t si = 0; si < nsol; ++si) {
                    std::vector<u64> user(m);
                    for (std::size_t k = 0; k < m; ++k) user[perm[k]] = flat[b][si * m + k];
                    (*solutions)[b].push_back(std::move(user));
                }
            }
        }
        return counts;
    }

    // integer counters commute exactly, so per-block accumulators may merge in
    // any order; block boundaries are fixed by range0 alone
    u64 block = std::max<u64>(1, (range0 + 63) / 64);
    u64 nblocks = (range0 + block - 1) / block;
    std::vector<std::vector<u64>> partial(nblocks);
    for_blocks(range0, block, [&](std::size_t bi, u64 begin, u64 end) {
        partial[bi].assign(q, 0);
        run_span(begin, end, partial[bi]);
    });
    for (auto& pc : partial) {
        for (u64 i = 0; i < q; ++i) counts[i] += pc[i];
    }
    return counts;
}

UnitComplex term_character_sum(const EquationInstance& inst, const SearchRegion& region,
                               std::size_t sorted_k, FieldElement mu) {
    const Field& f = inst.field();
    if (mu.field == nullptr || !same_field(f, *mu.field)) {
        throw std::invalid_argument("mu from a different field");
    }
    const Term& t = inst.sorted_term(sorted_k);
    u64 range = region.range(sorted_k);
    Cplx acc = 0.0;
    FieldElement v = t.coeff;
    for (u64 x = 0; x < range; ++x) {
        acc += f.psi(f.mul(mu, v));
        v = f.mul(v, t.base);
    }
    return acc;
}

namespace {

// per-mu products P(mu) = prod_k T_k(mu)
std::vector<Cplx> mu_products(const EquationInstance& inst, const SearchRegion& region) {
    const Field& f = inst.field();
    u64 q = f.size();
    auto vals = orbit_values(inst, region);
    std::vector<Cplx> prod(q);
    for_blocks(q, 1024, [&](std::size_t, u64 begin, u64 end) {
        for (u64 mu = begin; mu < end; ++mu) {
            FieldElement me = f.element(mu);
            Cplx p = 1.0;
            for (auto& vk : vals) {
                Cplx t = 0.0;
                for (u64 e : vk) t += f.psi(f.mul(me, f.element(e)));
                p *= t;
            }
            prod[mu] = p;
        }
    });
    return prod;
}

}  // namespace

double count_via_charsum(const EquationInstance& inst, FieldElement b,
                         const SearchRegion& region) {
    const Field& f = inst.field();
    if (b.field == nullptr || !same_field(f, *b.field)) {
        throw std::invalid_argument("target from a different field");
    }
    u64 q = f.size();
    auto vals = orbit_values(inst, region);
    FieldElement nb = f.neg(b);
    u64 nblocks = (q + 1023) / 1024;
    std::vector<Cplx> partial(nblocks, 0.0);
    for_blocks(q, 1024, [&](std::size_t bi, u64 begin, u64 end) {
        Cplx acc = 0.0;
        for (u64 mu = begin; mu < end; ++mu) {
            FieldElement me = f.element(mu);
            Cplx p = f.psi(f.mul(nb, me));
            for (auto& vk : vals) {
                Cplx t = 0.0;
                for (u64 e : vk) t += f.psi(f.mul(me, f.element(e)));
                p *= t;
            }
            acc += p;
        }
        partial[bi] = acc;
    });
    Cplx total = 0.0;
    for (const Cplx& c : partial) total += c;  // fixed block order
    return total.real() / double(q);
}

std::vector<double> count_via_charsum_all_b(const EquationInstance& inst,
                                            const SearchRegion& region) {
    const Field& f = inst.field();
    u64 q = f.size();
    std::vector<Cplx> prod = mu_products(inst, region);
    std::vector<double> out(q, 0.0);
    for_blocks(q, 256, [&](std::size_t, u64 begin, u64 end) {
        for (u64 b = begin; b < end; ++b) {
            FieldElement nb = f.neg(f.element(b));
            Cplx acc = 0.0;
            for (u64 mu = 0; mu < q; ++mu) {
                acc += prod[mu] * f.psi(f.mul(nb, f.element(mu)));
            }
            out[b] = acc.real() / double(q);
        }
    });
    return out;
}

double mean_square_deviation_charsum(const EquationInstance& inst, const SearchRegion& region) {
    const Field& f = inst.field();
    u64 q = f.size();
    auto vals = orbit_values(inst, region);
    u64 nblocks = (q - 1 + 1023) / 1024;
    std::vector<double> partial(nblocks, 0.0);
    for_blocks(q - 1, 1024, [&](std::size_t bi, u64 begin, u64 end) {
        double acc = 0.0;
        for (u64 i = begin; i < end; ++i) {
            u64 mu = i + 1;  // skip the trivial character
            FieldElement me = f.element(mu);
            double p = 1.0;
            for (auto& vk : vals) {
                Cplx t = 0.0;
                for (u64 e : vk) t += f.psi(f.mul(me, f.element(e)));
                p *= std::norm(t);
            }
            acc += p;
        }
        partial[bi] = acc;
    });
    double total = 0.0;
    for (double d : partial) total += d;
    return total / double(q);
}

CensusReport census(const EquationInstance& inst, double delta, const SearchRegion& region,
                    std::uint64_t count_cap) {
    const Field& f = inst.field();
    u64 q = f.size();
    std::size_t m = inst.term_count();
    CensusReport rep;
    rep.region = region;
    rep.delta_param = delta;

    std::vector<u64> counts = count_all_b(inst, region, count_cap);

    BigInt head = 1;  // prod_{i<m} s_i * r
    for (std::size_t k = 0; k + 1 < m; ++k) head *= region.full_sizes[k];
    head *= region.r;
    BigInt bq = q;
    double threshold =
        delta * std::sqrt(double(region.r) * std::pow(double(q), double(m) - 2.0));

    rep.per_b.reserve(q);
    BigInt sum_sq = 0;
    for (u64 b = 0; b < q; ++b) {
        DensityReport row;
        row.b = b;
        row.count = counts[b];
        row.main = BigRational::reduced(head, bq);
        BigInt dev = BigInt(counts[b]) * bq - head;
        row.delta = BigRational::reduced(dev, bq);
        row.threshold = threshold;
        double dev_abs = std::abs(dev.convert_to<double>()) / double(q);
        row.exceptional = dev_abs >= threshold;
        if (row.exceptional) ++rep.exceptional_count;
        sum_sq += BigInt(counts[b]) * counts[b];
        rep.per_b.push_back(std::move(row));
    }
    // E(r) = sum_b (N_b - head/q)^2 = (q sum N^2 - head^2) / q
    rep.mean_square = BigRational::reduced(bq * sum_sq - head * head, bq);
    BigInt bound = 1;
    for (std::size_t i = 0; i + 1 < m; ++i) bound *= bq;
    bound *= region.r;
    rep.mean_square_bound = bound;
    rep.mean_square_holds = rep.mean_square.num < rep.mean_square_bound * rep.mean_square.den;
    rep.exceptional_bound = double(q) / (delta * delta);
    rep.exceptional_holds = double(rep.exceptional_count) <= rep.exceptional_bound;

    if (m == 3) {
        double s1 = double(region.full_sizes[0]);
        double s2 = double(region.full_sizes[1]);
        double s3 = double(region.full_sizes[2]);
        rep.density_lhs = s1 * s2 / double(q);
        rep.density_rhs_s3 = std::sqrt(double(q) * std::log(double(q)) / s3);
        rep.density_rhs_s3_minus_2 =
            s3 > 2 ? std::sqrt(double(q) * std::log(double(q)) / (s3 - 2.0))
                   : std::numeric_limits<double>::quiet_NaN();
    } else {
        rep.density_lhs = rep.density_rhs_s3 = rep.density_rhs_s3_minus_2 =
            std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

std::pair<double, double> weil_check(FieldElement a, FieldElement g, std::uint64_t s,
                                     FieldElement mu) {
    if (a.field == nullptr || g.field == nullptr || mu.field == nullptr) {
        throw std::invalid_argument("element has no field");
    }
    const Field& f = *g.field;
    if (!same_field(f, *a.field) || !same_field(f, *mu.field)) {
        throw std::invalid_argument("elements belong to different fields");
    }
    if (mu.is_zero()) throw std::domain_error("mu must be a nontrivial character index");
    if (a.is_zero()) throw std::invalid_argument("coefficient a must be nonzero");
    if (g.is_zero()) throw std::invalid_argument("base g must be nonzero");
    if (s == 0 || f.pow(g, s).enc != 1) throw std::invalid_argument("s is not the order of g");
    for (u64 l : factorize(s).primes()) {
        if (f.pow(g, s / l).enc == 1) throw std::invalid_argument("s is not the exact order of g");
    }
    FieldElement c = f.mul(a, mu);
    Cplx acc = 0.0;
    FieldElement v = f.one();
    for (u64 x = 0; x < s; ++x) {
        acc += f.psi(f.mul(c, v));
        v = f.mul(v, g);
    }
    return {std::abs(acc), std::sqrt(double(f.size()))};
}

RegionChoice min_r(const EquationInstance& inst, double delta) {
    const Field& f = inst.field();
    std::size_t m = inst.term_count();
    long double lnq = std::log(static_cast<long double>(f.size()));
    long double lp = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        lp += std::log(static_cast<long double>(inst.sorted_order(k)));
    }
    long double base = std::exp(static_cast<long double>(m) * lnq - 2.0l * lp);
    long double raw = base * static_cast<long double>(delta) * static_cast<long double>(delta);
    RegionChoice choice;
    if (raw >= 1.8e18l) {
        choice.r_raw = UINT64_MAX;
    } else {
        choice.r_raw = std::max<u64>(1, static_cast<u64>(std::ceil(raw)));
    }
    u64 s_last = inst.last_order();
    choice.corollary_applicable = base * lnq < static_cast<long double>(s_last);
    choice.region = make_region(inst, std::clamp<u64>(choice.r_raw, 1, s_last));
    return choice;
}

void write_census_csv(std::ostream& os, const CensusReport& report) {
    os << "b,N,main_num,main_den,delta_num,delta_den,threshold,exceptional\n";
    for (const DensityReport& row : report.per_b) {
        os << row.b << ',' << row.count << ',' << row.main.num << ',' << row.main.den << ','
           << row.delta.num << ',' << row.delta.den << ',' << format_real(row.threshold) << ','
           << (row.exceptional ? 1 : 0) << '\n';
    }
}

}  // namespace expsum

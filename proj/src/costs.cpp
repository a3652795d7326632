#include "expsum/costs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "expsum/dlog.hpp"
#include "expsum/factor.hpp"
#include "expsum/util.hpp"

namespace expsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct T3Fields {
    bool applicable = false;
    u64 r = 0;
    double m_est = 0.0;
    double bound = 0.0;
    double bound_stated = 0.0;
};

// Refined-route quantities for three terms: precondition (s1 s2)^2 s3 >
// q^3 ln q, depth floor(q^3 (s1 s2)^-2 ln q) clamped to >= 1, and the bound
// sqrt(q) (s1^2 s2^2 s3)^{-1/10} (the q^2-prefactor variant kept alongside).
T3Fields t3_fields(u64 q, u64 s1, u64 s2, u64 s3) {
    long double lnq = std::log(static_cast<long double>(q));
    long double lp = std::log(static_cast<long double>(s1)) +
                     std::log(static_cast<long double>(s2));
    long double ls = 2.0l * lp + std::log(static_cast<long double>(s3));
    T3Fields t;
    t.applicable = ls > 3.0l * lnq + std::log(lnq);
    if (!t.applicable) return t;
    long double raw = std::exp(3.0l * lnq - 2.0l * lp + std::log(lnq));
    t.r = raw >= 1.0l ? static_cast<u64>(std::floor(raw)) : 1;
    t.m_est = static_cast<double>(static_cast<long double>(s1) * s2 * t.r / q);
    long double scale = std::exp(-0.1l * ls);
    t.bound = static_cast<double>(std::sqrt(static_cast<long double>(q)) * scale);
    t.bound_stated =
        static_cast<double>(static_cast<long double>(q) * static_cast<long double>(q) * scale);
    return t;
}

u64 checked_cost(u128 value, const char* what) {
    if (value > UINT64_MAX) throw CapacityError(what);
    return static_cast<u64>(value);
}

u64 t3_query_count(u64 s2, u64 r, double m_value) {
    double inside = static_cast<double>(s2) * static_cast<double>(r) / m_value;
    return static_cast<u64>(std::ceil(std::sqrt(inside)));
}

u64 smallest_primitive_root(const Field& f, const Factorization& fq1) {
    u64 q = f.size();
    for (u64 enc = 2; enc < q; ++enc) {
        FieldElement g = f.element(enc);
        bool primitive = true;
        for (u64 l : fq1.primes()) {
            if (f.pow(g, (q - 1) / l).enc == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return enc;
    }
    throw std::logic_error("no primitive root found in a finite field");
}

u64 nearest_divisor_in_log(const Factorization& fq1, double target_ln) {
    u64 best = 1;
    double best_dist = std::abs(target_ln);
    for (u64 d : fq1.divisors()) {
        double dist = std::abs(std::log(static_cast<double>(d)) - target_ln);
        if (dist < best_dist || (dist == best_dist && d < best)) {
            best = d;
            best_dist = dist;
        }
    }
    return best;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate abscissa for the slope fit");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

CostReport cost_report(const EquationInstance& inst, DeltaPolicy delta, MSource m_source,
                       std::uint64_t count_cap) {
    const Field& f = inst.field();
    u64 q = f.size();
    std::size_t m = inst.term_count();
    SolvePlan plan = make_plan(inst, delta, false);

    CostReport rep;
    rep.q = q;
    for (std::size_t k = 0; k < m; ++k) rep.orders.push_back(inst.sorted_order(k));
    rep.r_plan = plan.r_raw;
    rep.depth = plan.depth;
    u64 root1 = isqrt_ceil(inst.sorted_order(0));
    rep.classical_cost = checked_cost(u128(plan.grid) * root1, "classical cost exceeds 64 bits");
    rep.t2_grid = plan.grid;
    rep.t2_queries = isqrt_ceil(plan.grid);
    double expo = double(m * (m - 1)) / double(2 * (2 * m - 1));
    rep.t2_bound = std::pow(double(q), expo);
    rep.shor_cost = "(log q)^O(1)";

    if (m == 3) {
        u64 s1 = rep.orders[0], s2 = rep.orders[1], s3 = rep.orders[2];
        long double lhs = std::log(static_cast<long double>(plan.grid));
        long double rhs = 0.4l * (2.0l * std::log(static_cast<long double>(s1)) +
                                  2.0l * std::log(static_cast<long double>(s2)) +
                                  std::log(static_cast<long double>(plan.depth)));
        rep.t2_chain_holds = lhs <= rhs + 1e-9l;

        T3Fields t3 = t3_fields(q, s1, s2, s3);
        rep.t3_applicable = t3.applicable;
        if (t3.applicable) {
            rep.t3_r = t3.r;
            rep.m_est = t3.m_est;
            rep.m_source = m_source;
            if (m_source == MSource::Census) {
                SearchRegion region = make_region(inst, std::min(t3.r, s3));
                std::vector<u64> counts = count_all_b(inst, region, count_cap);
                rep.m_value = std::max<double>(1.0, double(counts[inst.target().enc]));
            } else {
                rep.m_value = std::max(1.0, t3.m_est);
            }
            rep.t3_queries = t3_query_count(s2, t3.r, rep.m_value);
            rep.t3_bound = t3.bound;
            rep.t3_bound_stated = t3.bound_stated;
        }
    }
    return rep;
}

QuantumSolveResult quantum_solve_simulated(const EquationInstance& inst, const SolvePlan& plan,
                                           std::uint64_t seed,
                                           std::optional<std::uint64_t> marked_hint) {
    const Field& f = inst.field();
    std::size_t m = inst.term_count();
    if (plan.region.full_sizes.size() != m) {
        throw std::invalid_argument("plan was built for a different instance shape");
    }
    if (plan.grid > kMaxSimulatedSpace) {
        throw CapacityError("enumeration grid too large for exact simulation");
    }

    const Term& lead = inst.sorted_term(0);
    u64 s1 = inst.sorted_order(0);
    DlogTable table(lead.base, s1);
    FieldElement lead_coeff_inv = f.inv(lead.coeff);
    FieldElement b = inst.target();
    u64 lead_range = plan.region.range(0);

    std::vector<std::vector<FieldElement>> vals(m);
    for (std::size_t k = 1; k < m; ++k) {
        const Term& t = inst.sorted_term(k);
        u64 range = plan.region.range(k);
        vals[k].reserve(range);
        FieldElement v = t.coeff;
        for (u64 x = 0; x < range; ++x) {
            vals[k].push_back(v);
            v = f.mul(v, t.base);
        }
    }

    auto target_of = [&](u64 idx) {
        FieldElement acc = b;
        u64 rest = idx;
        for (std::size_t k = 1; k < m; ++k) {
            u64 range = plan.region.range(k);
            acc = f.sub(acc, vals[k][rest % range]);
            rest /= range;
        }
        return f.mul(lead_coeff_inv, acc);
    };
    auto oracle = [&](u64 idx) {
        FieldElement h = target_of(idx);
        if (h.is_zero()) return false;
        DlogResult dr = table.lookup(h);
        return dr.exponent.has_value() && *dr.exponent < lead_range;
    };

    GroverRun run = marked_hint ? grover_known_count(plan.grid, oracle, *marked_hint, seed)
                                : bbht_search(plan.grid, oracle, seed);

    QuantumSolveResult res;
    res.run = run;
    if (run.found) {
        u64 idx = *run.index;
        FieldElement h = target_of(idx);
        DlogResult dr = table.lookup(h);
        if (!dr.exponent) throw std::logic_error("measured index fails its own oracle");
        std::vector<u64> user(m);
        const auto& perm = inst.sorted_perm();
        user[perm[0]] = *dr.exponent;
        u64 rest = idx;
        for (std::size_t k = 1; k < m; ++k) {
            u64 range = plan.region.range(k);
            user[perm[k]] = rest % range;
            rest /= range;
        }
        if (!verify_solution(inst, user)) {
            throw std::logic_error("search produced a tuple that fails verification");
        }
        res.status = SolveStatus::Found;
        res.solution = std::move(user);
        return res;
    }
    bool exhaustive = plan.depth == inst.last_order() && lead_range == s1;
    res.status =
        run.fallback_used && exhaustive ? SolveStatus::NoSolution : SolveStatus::Inconclusive;
    return res;
}

std::vector<std::uint64_t> default_scan_primes() {
    return {1009, 1741, 2857, 3511, 7741, 9283, 13681, 17551, 30071, 32833, 63841, 99991};
}

ScanResult ratio_scan(const std::vector<std::uint64_t>& primes, ScanPolicy policy, std::size_t m,
                      DeltaPolicy delta) {
    if (m != 2 && m != 3) throw std::invalid_argument("the scan supports 2 or 3 terms");
    if (primes.size() < 2) throw std::invalid_argument("need at least two primes to fit a slope");

    std::vector<u64> ps(primes);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ps.size() < 2) throw std::invalid_argument("need at least two distinct primes");

    ScanResult out;
    out.policy = policy;
    out.m = m;
    double order_exponent = double(m) / double(2 * m - 1);

    for (u64 p : ps) {
        if (p < 3 || !is_prime(p)) {
            throw std::invalid_argument("scan entries must be odd primes");
        }
        Field f(p);
        Factorization fq1 = factorize(p - 1);
        u64 root = smallest_primitive_root(f, fq1);
        u64 base_enc;
        if (policy == ScanPolicy::MaxOrder) {
            base_enc = root;
        } else {
            double target_ln = order_exponent * std::log(double(p));
            u64 d = nearest_divisor_in_log(fq1, target_ln);
            base_enc = f.pow(f.element(root), (p - 1) / d).enc;
        }
        std::vector<std::pair<u64, u64>> terms(m, {1, base_enc});
        EquationInstance inst(f, terms, 1);
        SolvePlan plan = make_plan(inst, delta, false);

        ScanRow row;
        row.q = p;
        for (std::size_t k = 0; k < m; ++k) row.orders.push_back(inst.sorted_order(k));
        row.r = plan.depth;
        row.classical_cost = checked_cost(u128(plan.grid) * isqrt_ceil(row.orders[0]),
                                          "classical cost exceeds 64 bits");
        row.t2_queries = isqrt_ceil(plan.grid);
        row.t2_bound = std::pow(double(p), double(m * (m - 1)) / double(2 * (2 * m - 1)));
        if (m == 3) {
            T3Fields t3 = t3_fields(p, row.orders[0], row.orders[1], row.orders[2]);
            if (t3.applicable) {
                row.t3_queries =
                    t3_query_count(row.orders[1], t3.r, std::max(1.0, t3.m_est));
                row.t3_bound = t3.bound;
            }
        }
        out.rows.push_back(std::move(row));
    }

    std::vector<double> lq, lc, lt2;
    for (const ScanRow& row : out.rows) {
        lq.push_back(std::log(double(row.q)));
        lc.push_back(std::log(double(row.classical_cost)));
        lt2.push_back(std::log(double(row.t2_queries)));
    }
    out.classical_exponent = fitted_slope(lq, lc);
    out.quantum_exponent = fitted_slope(lq, lt2);
    out.ratio = out.classical_exponent / out.quantum_exponent;
    return out;
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
    os << "q";
    for (std::size_t i = 1; i <= scan.m; ++i) os << ",s" << i;
    os << ",r,classical_cost,t2_queries,t3_queries,t2_bound,t3_bound\n";
    for (const ScanRow& row : scan.rows) {
        os << row.q;
        for (u64 s : row.orders) os << ',' << s;
        os << ',' << row.r << ',' << row.classical_cost << ',' << row.t2_queries << ','
           << row.t3_queries << ',' << format_real(row.t2_bound) << ','
           << format_real(row.t3_bound) << '\n';
    }
    os << "# classical_exp=" << format_real(scan.classical_exponent)
       << " quantum_exp=" << format_real(scan.quantum_exponent)
       << " ratio=" << format_real(scan.ratio) << '\n';
}

}  // namespace expsum

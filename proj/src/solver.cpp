#include "expsum/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "expsum/dlog.hpp"
#include "expsum/util.hpp"

namespace expsum {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
}  // namespace

SolvePlan make_plan(const EquationInstance& inst, DeltaPolicy delta, bool full_scan) {
    SolvePlan plan;
    plan.delta = delta.resolve(inst.field().size());
    RegionChoice choice = min_r(inst, plan.delta);
    plan.r_raw = choice.r_raw;
    u64 s_last = inst.last_order();
    plan.depth = full_scan ? s_last : std::min(plan.r_raw, s_last);
    plan.plan_case = plan.r_raw <= s_last ? PlanCase::TruncatedLast : PlanCase::FullLast;
    plan.region = make_region(inst, plan.depth);
    u128 grid = 1;
    for (std::size_t k = 1; k < inst.term_count(); ++k) {
        grid *= plan.region.range(k);
        if (grid > UINT64_MAX) throw CapacityError("enumeration grid exceeds 64 bits");
    }
    plan.grid = static_cast<u64>(grid);
    return plan;
}

SolveResult solve_classical(const EquationInstance& inst, const SolvePlan& plan,
                            std::uint64_t work_cap) {
    const Field& f = inst.field();
    std::size_t m = inst.term_count();
    if (plan.region.full_sizes.size() != m) {
        throw std::invalid_argument("plan was built for a different instance shape");
    }
    u64 s1 = inst.sorted_order(0);
    u64 root = isqrt_ceil(s1);
    if (u128(plan.grid) * root + root > work_cap) {
        throw CapacityError("planned work exceeds the work cap");
    }

    SolveResult res;
    res.plan = plan;

    const Term& lead = inst.sorted_term(0);
    DlogTable table(lead.base, s1);
    FieldElement lead_coeff_inv = f.inv(lead.coeff);
    FieldElement b = inst.target();
    u64 lead_range = plan.region.range(0);

    // a_k g_k^x for each enumerated term, x below its range
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

    std::vector<u64> xs(m, 0);
    while (true) {
        ++res.stats.tuples_scanned;
        FieldElement acc = b;
        for (std::size_t k = 1; k < m; ++k) acc = f.sub(acc, vals[k][xs[k]]);
        FieldElement h = f.mul(lead_coeff_inv, acc);
        if (!h.is_zero()) {
            ++res.stats.dlog_queries;
            DlogResult dr = table.lookup(h);
            res.stats.giant_steps += dr.giant_steps;
            if (dr.exponent && *dr.exponent < lead_range) {
                std::vector<u64> user(m);
                const auto& perm = inst.sorted_perm();
                user[perm[0]] = *dr.exponent;
                for (std::size_t k = 1; k < m; ++k) user[perm[k]] = xs[k];
                if (!verify_solution(inst, user)) {
                    throw std::logic_error("search produced a tuple that fails verification");
                }
                res.status = SolveStatus::Found;
                res.solution = std::move(user);
                return res;
            }
        }
        std::size_t k = 1;
        while (k < m && ++xs[k] == plan.region.range(k)) {
            xs[k] = 0;
            ++k;
        }
        if (k >= m) break;
    }

    bool exhaustive = plan.depth == inst.last_order() && lead_range == s1;
    res.status = exhaustive ? SolveStatus::NoSolution : SolveStatus::Inconclusive;
    return res;
}

SolveResult solve_classical(const EquationInstance& inst, DeltaPolicy delta, bool full_scan,
                            std::uint64_t work_cap) {
    return solve_classical(inst, make_plan(inst, delta, full_scan), work_cap);
}

}  // namespace expsum

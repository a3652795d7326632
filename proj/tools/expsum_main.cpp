#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expsum/census.hpp"
#include "expsum/config.hpp"
#include "expsum/costs.hpp"
#include "expsum/dlog.hpp"
#include "expsum/factor.hpp"
#include "expsum/field.hpp"
#include "expsum/grover.hpp"
#include "expsum/order.hpp"
#include "expsum/solver.hpp"
#include "expsum/util.hpp"

namespace {

using namespace expsum;
using nlohmann::json;
using u64 = std::uint64_t;

constexpr int kExitFound = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitParam = 64;
constexpr int kExitCapacity = 65;
constexpr int kExitInternal = 70;

u64 parse_u64_token(const std::string& tok, const std::string& what) {
    u64 value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || tok.empty()) {
        throw std::invalid_argument("bad " + what + ": '" + tok + "'");
    }
    return value;
}

std::vector<std::pair<u64, u64>> parse_terms(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("no terms given");
    std::vector<std::pair<u64, u64>> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok =
            comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("bad term token (want a:g): '" + tok + "'");
        }
        u64 a = parse_u64_token(tok.substr(0, colon), "term coefficient");
        u64 g = parse_u64_token(tok.substr(colon + 1), "term base");
        out.emplace_back(a, g);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

DeltaPolicy parse_delta(const std::string& s) {
    if (s == "sqrt_log") return DeltaPolicy::sqrt_log_default();
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !(v > 0.0)) {
        throw std::invalid_argument("bad delta (want sqrt_log or a positive real): '" + s + "'");
    }
    return DeltaPolicy::fixed(v);
}

// Destination for the primary document (CSV/JSON/text). When it is a file,
// summaries go to stdout; when it is stdout, summaries go to stderr so the
// document stays clean.
struct Sink {
    std::ofstream file;
    std::ostream* doc = nullptr;
    std::ostream* summary = nullptr;
};

Sink open_sink(const std::string& path) {
    Sink s;
    if (path.empty()) {
        s.doc = &std::cout;
        s.summary = &std::cerr;
    } else {
        s.file.open(path, std::ios::binary);
        if (!s.file) throw std::invalid_argument("cannot open output file: " + path);
        s.doc = &s.file;
        s.summary = &std::cout;
    }
    return s;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Found: return "Found";
        case SolveStatus::NoSolution: return "NoSolution";
        default: return "Inconclusive";
    }
}

int status_exit(SolveStatus s) {
    switch (s) {
        case SolveStatus::Found: return kExitFound;
        case SolveStatus::NoSolution: return kExitNoSolution;
        default: return kExitInconclusive;
    }
}

std::string join_u64(const std::vector<u64>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

json plan_json(const SolvePlan& plan) {
    return {{"r_raw", plan.r_raw},
            {"depth", plan.depth},
            {"case", plan.plan_case == PlanCase::TruncatedLast ? "truncated" : "full"},
            {"delta", plan.delta},
            {"grid", plan.grid}};
}

json run_json(const GroverRun& run) {
    json j = {{"space", run.space},
              {"marked", run.marked},
              {"iterations", run.iterations},
              {"success_prob", run.success_prob},
              {"seed", run.seed},
              {"found", run.found},
              {"oracle_queries", run.oracle_queries},
              {"rounds", run.rounds},
              {"fallback_used", run.fallback_used},
              {"fallback_checks", run.fallback_checks}};
    if (run.index) j["index"] = *run.index;
    return j;
}

// Options shared by the instance-driven subcommands, with config-file
// defaults applied before explicit flags.
struct InstanceOpts {
    std::string config_path;
    std::string field = "7";
    std::string terms;
    u64 b = 0;
    std::string delta = "sqrt_log";
    u64 r = 0;  // 0 = automatic
    u64 seed = 0;
    bool full_scan = false;
    bool quantum = false;
    bool json_out = false;
    std::string out;

    CLI::App* sub = nullptr;

    void attach(CLI::App* s, bool with_solver_flags) {
        sub = s;
        s->add_option("--config", config_path, "JSON run config; flags override it");
        s->add_option("--field", field, "field spec: p, p^nu or p^nu/c0,...,cnu");
        s->add_option("--terms", terms, "terms as a:g pairs, comma separated (encodings)");
        s->add_option("--b", b, "target element encoding");
        s->add_option("--delta", delta, "deviation scale: sqrt_log or a positive real");
        s->add_option("--r", r, "truncation depth override (default: derived)");
        s->add_option("--seed", seed, "root seed for randomized modes");
        if (with_solver_flags) {
            s->add_flag("--full-scan", full_scan, "search the whole last orbit");
            s->add_flag("--quantum", quantum, "use the simulated quantum search");
        }
        s->add_flag("--json", json_out, "emit one machine-readable JSON document");
        s->add_option("--out", out, "write the document to this file");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (sub->count("--field")) cfg.field = field;
        if (sub->count("--terms")) cfg.terms = parse_terms(terms);
        if (sub->count("--b")) cfg.b = b;
        if (sub->count("--delta")) cfg.delta = parse_delta(delta);
        if (sub->count("--seed")) cfg.seed = seed;
        if (sub->count("--out")) cfg.out = out;
        if (cfg.terms.empty() && !terms.empty()) cfg.terms = parse_terms(terms);
        return cfg;
    }
};

int run_solve(const InstanceOpts& opt) {
    RunConfig cfg = opt.resolve();
    Field field = Field::parse(cfg.field);
    EquationInstance inst = instance_from_config(cfg, field);
    SolvePlan plan = make_plan(inst, cfg.delta, opt.full_scan);
    if (opt.r > 0) {
        plan.depth = opt.r;
        plan.region = make_region(inst, opt.r);
        unsigned __int128 grid = 1;
        for (std::size_t k = 1; k < inst.term_count(); ++k) grid *= plan.region.range(k);
        if (grid > UINT64_MAX) throw CapacityError("enumeration grid exceeds 64 bits");
        plan.grid = static_cast<u64>(grid);
    }

    Sink sink = open_sink(cfg.out);
    SolveStatus status;
    json j;
    std::ostringstream text;

    if (opt.quantum) {
        QuantumSolveResult res = quantum_solve_simulated(inst, plan, cfg.seed);
        status = res.status;
        text << "status=" << status_name(status) << '\n';
        if (res.solution) text << "solution=" << join_u64(*res.solution) << '\n';
        text << "r_raw=" << plan.r_raw << " depth=" << plan.depth
             << " case=" << (plan.plan_case == PlanCase::TruncatedLast ? "truncated" : "full")
             << " grid=" << plan.grid << '\n';
        const GroverRun& run = res.run;
        text << "oracle_queries=" << run.oracle_queries << " rounds=" << run.rounds
             << " iterations=" << run.iterations << " marked=" << run.marked
             << " fallback_used=" << (run.fallback_used ? 1 : 0)
             << " fallback_checks=" << run.fallback_checks << '\n';
        text << "success_prob=" << format_real(run.success_prob) << " seed=" << run.seed << '\n';
        j = {{"mode", "quantum"},
             {"status", status_name(status)},
             {"plan", plan_json(plan)},
             {"run", run_json(run)}};
        if (res.solution) j["solution"] = *res.solution;
    } else {
        SolveResult res = solve_classical(inst, plan, cfg.work_cap);
        status = res.status;
        u64 root1 = isqrt_ceil(inst.sorted_order(0));
        u64 work = res.stats.tuples_scanned * root1;
        u64 work_bound = plan.grid * root1;
        text << "status=" << status_name(status) << '\n';
        if (res.solution) text << "solution=" << join_u64(*res.solution) << '\n';
        text << "r_raw=" << plan.r_raw << " depth=" << plan.depth
             << " case=" << (plan.plan_case == PlanCase::TruncatedLast ? "truncated" : "full")
             << " grid=" << plan.grid << '\n';
        text << "tuples_scanned=" << res.stats.tuples_scanned
             << " dlog_queries=" << res.stats.dlog_queries
             << " giant_steps=" << res.stats.giant_steps << '\n';
        text << "work=" << work << " work_bound=" << work_bound << '\n';
        j = {{"mode", "classical"},
             {"status", status_name(status)},
             {"plan", plan_json(plan)},
             {"stats",
              {{"tuples_scanned", res.stats.tuples_scanned},
               {"dlog_queries", res.stats.dlog_queries},
               {"giant_steps", res.stats.giant_steps}}},
             {"work", work},
             {"work_bound", work_bound}};
        if (res.solution) j["solution"] = *res.solution;
    }

    if (opt.json_out) {
        *sink.doc << j.dump(2) << '\n';
    } else {
        *sink.doc << text.str();
    }
    return status_exit(status);
}

int run_census(const InstanceOpts& opt) {
    RunConfig cfg = opt.resolve();
    Field field = Field::parse(cfg.field);
    EquationInstance inst = instance_from_config(cfg, field);
    double delta = cfg.delta.resolve(field.size());
    SearchRegion region = opt.r > 0 ? make_region(inst, opt.r) : min_r(inst, delta).region;
    CensusReport rep = census(inst, delta, region, cfg.count_cap);

    Sink sink = open_sink(cfg.out);
    std::ostringstream summary;
    summary << "E(r)=" << rep.mean_square.num.str() << '/' << rep.mean_square.den.str()
            << " bound=" << rep.mean_square_bound.str() << " exceptional="
            << rep.exceptional_count << '/' << format_real(rep.exceptional_bound) << '\n';

    if (opt.json_out) {
        json rows = json::array();
        for (const DensityReport& row : rep.per_b) {
            rows.push_back({{"b", row.b},
                            {"count", row.count},
                            {"main", row.main.num.str() + "/" + row.main.den.str()},
                            {"delta", row.delta.num.str() + "/" + row.delta.den.str()},
                            {"threshold", row.threshold},
                            {"exceptional", row.exceptional}});
        }
        json j = {{"r", rep.region.r},
                  {"delta", rep.delta_param},
                  {"mean_square", rep.mean_square.num.str() + "/" + rep.mean_square.den.str()},
                  {"mean_square_bound", rep.mean_square_bound.str()},
                  {"mean_square_holds", rep.mean_square_holds},
                  {"exceptional_count", rep.exceptional_count},
                  {"exceptional_bound", rep.exceptional_bound},
                  {"exceptional_holds", rep.exceptional_holds},
                  {"rows", rows}};
        if (inst.term_count() == 3) {
            j["density_lhs"] = rep.density_lhs;
            j["density_rhs_s3"] = rep.density_rhs_s3;
            j["density_rhs_s3_minus_2"] = rep.density_rhs_s3_minus_2;
        }
        *sink.doc << j.dump(2) << '\n';
    } else {
        write_census_csv(*sink.doc, rep);
    }
    *sink.summary << summary.str();
    return rep.mean_square_holds && rep.exceptional_holds ? 0 : 1;
}

int run_count(const InstanceOpts& opt, bool with_brute) {
    RunConfig cfg = opt.resolve();
    Field field = Field::parse(cfg.field);
    EquationInstance inst = instance_from_config(cfg, field);
    double delta = cfg.delta.resolve(field.size());
    SearchRegion region = opt.r > 0 ? make_region(inst, opt.r) : min_r(inst, delta).region;

    std::vector<u64> counts = count_all_b(inst, region, cfg.count_cap);
    std::vector<double> charsum = count_via_charsum_all_b(inst, region);
    std::vector<u64> brute;
    if (with_brute) brute = count_brute(inst, region, cfg.brute_cap);

    Sink sink = open_sink(cfg.out);
    bool single = opt.sub->count("--b") > 0 || !opt.config_path.empty();
    if (opt.json_out) {
        json j = {{"r", region.r}};
        if (single) {
            j["b"] = cfg.b;
            j["count"] = counts[cfg.b];
            j["charsum"] = charsum[cfg.b];
            if (with_brute) j["brute"] = brute[cfg.b];
        } else {
            json rows = json::array();
            for (u64 b = 0; b < counts.size(); ++b) {
                json row = {{"b", b}, {"count", counts[b]}, {"charsum", charsum[b]}};
                if (with_brute) row["brute"] = brute[b];
                rows.push_back(std::move(row));
            }
            j["rows"] = std::move(rows);
        }
        *sink.doc << j.dump(2) << '\n';
    } else if (single) {
        *sink.doc << "b=" << cfg.b << " N=" << counts[cfg.b]
                  << " charsum=" << format_real(charsum[cfg.b]);
        if (with_brute) *sink.doc << " brute=" << brute[cfg.b];
        *sink.doc << '\n';
    } else {
        *sink.doc << "b,N,charsum" << (with_brute ? ",brute" : "") << '\n';
        for (u64 b = 0; b < counts.size(); ++b) {
            *sink.doc << b << ',' << counts[b] << ',' << format_real(charsum[b]);
            if (with_brute) *sink.doc << ',' << brute[b];
            *sink.doc << '\n';
        }
    }
    if (with_brute) {
        for (u64 b = 0; b < counts.size(); ++b) {
            if (counts[b] != brute[b]) {
                *sink.summary << "count mismatch at b=" << b << '\n';
                return kExitInternal;
            }
        }
    }
    return 0;
}

int run_weil(const std::string& field_spec, u64 a_enc, u64 g_enc, bool json_out,
             const std::string& out) {
    Field field = Field::parse(field_spec);
    u64 q = field.size();
    if (a_enc == 0 || a_enc >= q) throw std::invalid_argument("coefficient out of range");
    Factorization fq1 = factorize(q - 1);

    double worst_ratio = 0.0;
    u64 violations = 0, checked = 0;
    double root_q = std::sqrt(double(q));
    auto check_base = [&](u64 g) {
        OrderInfo info = multiplicative_order(field.element(g), fq1);
        for (u64 mu = 1; mu < q; ++mu) {
            auto [mag, bound] = weil_check(field.element(a_enc), field.element(g), info.order,
                                           field.element(mu));
            ++checked;
            if (mag > bound + 1e-9) ++violations;
            if (mag / bound > worst_ratio) worst_ratio = mag / bound;
        }
    };
    if (g_enc != 0) {
        if (g_enc >= q) throw std::invalid_argument("base out of range");
        check_base(g_enc);
    } else {
        for (u64 g = 1; g < q; ++g) check_base(g);
    }

    Sink sink = open_sink(out);
    if (json_out) {
        json j = {{"q", q},
                  {"sqrt_q", root_q},
                  {"checked", checked},
                  {"violations", violations},
                  {"worst_ratio", worst_ratio}};
        *sink.doc << j.dump(2) << '\n';
    } else {
        *sink.doc << "q=" << q << " sqrt_q=" << format_real(root_q) << " checked=" << checked
                  << " violations=" << violations
                  << " worst_ratio=" << format_real(worst_ratio) << '\n';
    }
    return violations == 0 ? 0 : 1;
}

int run_grover(u64 space, u64 marked, const std::string& mode, u64 trials, u64 seed,
               bool json_out, const std::string& out) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    if (marked > space) throw std::invalid_argument("marked count exceeds the space");
    auto oracle = [marked](u64 x) { return x < marked; };

    bool known = mode == "known";
    if (!known && mode != "bbht") {
        throw std::invalid_argument("mode must be known or bbht: '" + mode + "'");
    }
    if (known && marked == 0) throw std::invalid_argument("known mode needs marked >= 1");

    u64 found = 0, total_queries = 0, total_fallback = 0, fallback_runs = 0;
    for (u64 i = 0; i < trials; ++i) {
        u64 trial_seed = split_seed(seed, i);
        GroverRun run = known ? grover_known_count(space, oracle, marked, trial_seed)
                              : bbht_search(space, oracle, trial_seed);
        if (run.found) ++found;
        total_queries += run.oracle_queries;
        total_fallback += run.fallback_checks;
        if (run.fallback_used) ++fallback_runs;
    }
    double success = double(found) / double(trials);
    double mean_queries = double(total_queries) / double(trials);
    double closed = 0.0;
    u64 k = 0;
    if (known) {
        k = grover_iteration_count(space, marked);
        closed = grover_closed_form(space, marked, k);
    }

    Sink sink = open_sink(out);
    if (json_out) {
        json j = {{"space", space},     {"marked", marked},
                  {"mode", mode},       {"trials", trials},
                  {"seed", seed},       {"success_rate", success},
                  {"mean_queries", mean_queries},
                  {"fallback_runs", fallback_runs},
                  {"mean_fallback_checks", double(total_fallback) / double(trials)}};
        if (known) {
            j["iterations"] = k;
            j["closed_form"] = closed;
        }
        *sink.doc << j.dump(2) << '\n';
    } else {
        *sink.doc << "space=" << space << " marked=" << marked << " mode=" << mode
                  << " trials=" << trials << " seed=" << seed << '\n';
        if (known) {
            *sink.doc << "iterations=" << k << " closed_form=" << format_real(closed) << '\n';
        }
        *sink.doc << "success_rate=" << format_real(success)
                  << " mean_queries=" << format_real(mean_queries)
                  << " fallback_runs=" << fallback_runs << '\n';
    }
    return 0;
}

int run_costs(const InstanceOpts& opt, bool census_m) {
    RunConfig cfg = opt.resolve();
    Field field = Field::parse(cfg.field);
    EquationInstance inst = instance_from_config(cfg, field);
    CostReport rep = cost_report(inst, cfg.delta, census_m ? MSource::Census : MSource::MainTerm,
                                 cfg.count_cap);

    Sink sink = open_sink(cfg.out);
    if (opt.json_out) {
        json j = {{"q", rep.q},
                  {"orders", rep.orders},
                  {"r_plan", rep.r_plan},
                  {"depth", rep.depth},
                  {"classical_cost", rep.classical_cost},
                  {"t2_grid", rep.t2_grid},
                  {"t2_queries", rep.t2_queries},
                  {"t2_bound", rep.t2_bound},
                  {"t2_chain_holds", rep.t2_chain_holds},
                  {"t3_applicable", rep.t3_applicable},
                  {"shor_cost", rep.shor_cost}};
        if (rep.t3_applicable) {
            j["t3_r"] = rep.t3_r;
            j["m_source"] = rep.m_source == MSource::Census ? "census" : "main_term";
            j["m_est"] = rep.m_est;
            j["m_value"] = rep.m_value;
            j["t3_queries"] = rep.t3_queries;
            j["t3_bound"] = rep.t3_bound;
            j["t3_bound_stated"] = rep.t3_bound_stated;
        }
        *sink.doc << j.dump(2) << '\n';
    } else {
        std::ostream& os = *sink.doc;
        os << "q=" << rep.q << " orders=" << join_u64(rep.orders) << '\n';
        os << "r_plan=" << rep.r_plan << " depth=" << rep.depth << '\n';
        os << "classical_cost=" << rep.classical_cost << '\n';
        os << "t2_grid=" << rep.t2_grid << " t2_queries=" << rep.t2_queries
           << " t2_bound=" << format_real(rep.t2_bound)
           << " t2_chain_holds=" << (rep.t2_chain_holds ? 1 : 0) << '\n';
        os << "t3_applicable=" << (rep.t3_applicable ? 1 : 0) << '\n';
        if (rep.t3_applicable) {
            os << "t3_r=" << rep.t3_r
               << " m_source=" << (rep.m_source == MSource::Census ? "census" : "main_term")
               << " m_est=" << format_real(rep.m_est)
               << " m_value=" << format_real(rep.m_value) << '\n';
            os << "t3_queries=" << rep.t3_queries << " t3_bound=" << format_real(rep.t3_bound)
               << " t3_bound_stated=" << format_real(rep.t3_bound_stated)
               << " (statement-form prefactor q^2; proof form is sqrt(q))" << '\n';
        }
        os << "shor_cost=" << rep.shor_cost << '\n';
    }
    return 0;
}

int run_scan(const std::string& primes_csv, const std::string& policy_name, std::size_t m,
             const std::string& delta_str, bool json_out, const std::string& out) {
    std::vector<u64> primes;
    if (primes_csv.empty()) {
        primes = default_scan_primes();
    } else {
        std::size_t pos = 0;
        while (pos <= primes_csv.size()) {
            std::size_t comma = primes_csv.find(',', pos);
            std::string tok = comma == std::string::npos ? primes_csv.substr(pos)
                                                         : primes_csv.substr(pos, comma - pos);
            primes.push_back(parse_u64_token(tok, "prime"));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    ScanPolicy policy;
    if (policy_name == "max-order") {
        policy = ScanPolicy::MaxOrder;
    } else if (policy_name == "worst-case") {
        policy = ScanPolicy::WorstCase;
    } else {
        throw std::invalid_argument("policy must be max-order or worst-case: '" + policy_name +
                                    "'");
    }
    DeltaPolicy delta = parse_delta(delta_str);
    ScanResult scan = ratio_scan(primes, policy, m, delta);

    Sink sink = open_sink(out);
    if (primes.size() < 5) {
        *sink.summary << "warning: slope fitted from fewer than 5 primes\n";
    } else {
        double lo = double(*std::min_element(primes.begin(), primes.end()));
        double hi = double(*std::max_element(primes.begin(), primes.end()));
        if (std::log10(hi / lo) < 1.9) {
            *sink.summary << "warning: prime list spans fewer than ~2 decades\n";
        }
    }
    if (json_out) {
        json rows = json::array();
        for (const ScanRow& row : scan.rows) {
            rows.push_back({{"q", row.q},
                            {"orders", row.orders},
                            {"r", row.r},
                            {"classical_cost", row.classical_cost},
                            {"t2_queries", row.t2_queries},
                            {"t3_queries", row.t3_queries},
                            {"t2_bound", row.t2_bound},
                            {"t3_bound", row.t3_bound}});
        }
        json j = {{"policy", policy_name},
                  {"m", scan.m},
                  {"rows", rows},
                  {"classical_exp", scan.classical_exponent},
                  {"quantum_exp", scan.quantum_exponent},
                  {"ratio", scan.ratio}};
        *sink.doc << j.dump(2) << '\n';
    } else {
        write_scan_csv(*sink.doc, scan);
    }
    *sink.summary << "classical_exp=" << format_real(scan.classical_exponent)
                  << " quantum_exp=" << format_real(scan.quantum_exponent)
                  << " ratio=" << format_real(scan.ratio) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"searching and counting solutions of a1 g1^x1 + ... + am gm^xm = b over F_q"};
    app.require_subcommand(1);

    InstanceOpts solve_opt, census_opt, count_opt, costs_opt;
    bool count_brute_flag = false;
    bool costs_census_m = false;

    CLI::App* solve_cmd = app.add_subcommand("solve", "search for one solution");
    solve_opt.attach(solve_cmd, true);

    CLI::App* census_cmd = app.add_subcommand("census", "per-target density census CSV");
    census_opt.attach(census_cmd, false);

    CLI::App* count_cmd = app.add_subcommand("count", "solution counts per target");
    count_opt.attach(count_cmd, false);
    count_cmd->add_flag("--brute", count_brute_flag, "cross-check with plain enumeration");

    std::string weil_field = "7", weil_out;
    u64 weil_a = 1, weil_g = 0;
    bool weil_json = false;
    CLI::App* weil_cmd = app.add_subcommand("weil", "character-sum magnitude bound check");
    weil_cmd->add_option("--field", weil_field, "field spec");
    weil_cmd->add_option("--a", weil_a, "coefficient encoding (default 1)");
    weil_cmd->add_option("--g", weil_g, "base encoding (default: all bases)");
    weil_cmd->add_flag("--json", weil_json, "emit JSON");
    weil_cmd->add_option("--out", weil_out, "write the document to this file");

    u64 grover_space = 1024, grover_marked = 1, grover_trials = 1, grover_seed = 0;
    std::string grover_mode = "bbht", grover_out;
    bool grover_json = false;
    CLI::App* grover_cmd = app.add_subcommand("grover", "simulated quantum search trials");
    grover_cmd->add_option("--space", grover_space, "search-space size t");
    grover_cmd->add_option("--marked", grover_marked, "marked count m (first m indices)");
    grover_cmd->add_option("--mode", grover_mode, "known or bbht");
    grover_cmd->add_option("--trials", grover_trials, "number of seeded trials");
    grover_cmd->add_option("--seed", grover_seed, "root seed");
    grover_cmd->add_flag("--json", grover_json, "emit JSON");
    grover_cmd->add_option("--out", grover_out, "write the document to this file");

    CLI::App* costs_cmd = app.add_subcommand("costs", "classical/quantum cost comparison");
    costs_opt.attach(costs_cmd, false);
    costs_cmd->add_flag("--census-m", costs_census_m, "use the exact census for M");

    std::string scan_primes, scan_policy = "max-order", scan_delta = "sqrt_log", scan_out;
    std::size_t scan_m = 3;
    bool scan_json = false;
    CLI::App* scan_cmd = app.add_subcommand("scan", "cost scaling across primes");
    scan_cmd->add_option("--primes", scan_primes, "comma-separated primes (default: built-in)");
    scan_cmd->add_option("--policy", scan_policy, "max-order or worst-case");
    scan_cmd->add_option("--m", scan_m, "terms per instance: 2 or 3");
    scan_cmd->add_option("--delta", scan_delta, "deviation scale: sqrt_log or a positive real");
    scan_cmd->add_flag("--json", scan_json, "emit JSON");
    scan_cmd->add_option("--out", scan_out, "write the CSV/JSON to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParam;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opt);
        if (census_cmd->parsed()) return run_census(census_opt);
        if (count_cmd->parsed()) return run_count(count_opt, count_brute_flag);
        if (weil_cmd->parsed()) return run_weil(weil_field, weil_a, weil_g, weil_json, weil_out);
        if (grover_cmd->parsed()) {
            return run_grover(grover_space, grover_marked, grover_mode, grover_trials,
                              grover_seed, grover_json, grover_out);
        }
        if (costs_cmd->parsed()) return run_costs(costs_opt, costs_census_m);
        if (scan_cmd->parsed()) {
            return run_scan(scan_primes, scan_policy, scan_m, scan_delta, scan_json, scan_out);
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParam;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitParam;
}

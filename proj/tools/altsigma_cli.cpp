#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "altsigma/asymptotics.hpp"
#include "altsigma/factorint.hpp"
#include "altsigma/identities.hpp"
#include "altsigma/multfunc.hpp"
#include "altsigma/numeric.hpp"
#include "altsigma/search.hpp"

using namespace altsigma;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;   // counterexample or tolerance failure
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;  // budget, overflow, corrupt checkpoint

// Shortest round-trip decimal form; reals never pass through locale-dependent
// formatting, integers never pass through floating point at all.
std::string dstr(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

void emit(const ojson& j) { std::cout << j.dump() << '\n'; }

void apply_budget_env() {
    const char* env = std::getenv("ALTSIGMA_SIEVE_BUDGET_MB");
    if (!env) return;
    std::string_view s(env);
    uint64_t mb = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), mb);
    if (ec != std::errc() || p != s.data() + s.size() || mb == 0)
        throw std::invalid_argument("ALTSIGMA_SIEVE_BUDGET_MB must be a positive integer");
    set_memory_budget_bytes(mb << 20);
}

struct ComputeArgs {
    std::string fn;
    std::string n;
    int a = 1;
};

int cmd_compute(const ComputeArgs& args) {
    auto id = FunctionId::parse(args.fn, args.a);
    if (!id) throw std::invalid_argument("unknown function: " + args.fn);
    i128 n = parse_i128(args.n);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    i128 value = point_value(*id, factorize(n));

    ojson rec;
    rec["schema"] = "1";
    rec["type"] = "value";
    rec["fn"] = id->name();
    if (id->tag == Fn::beta_a || id->tag == Fn::sigma_a) rec["a"] = std::to_string(id->a);
    rec["n"] = to_string(n);
    rec["value"] = to_string(value);
    emit(rec);
    return kExitOk;
}

struct TableArgs {
    std::string fn;
    int a = 1;
    uint64_t max = 0;
    std::string format = "jsonl";
};

int cmd_table(const TableArgs& args) {
    auto id = FunctionId::parse(args.fn, args.a);
    if (!id) throw std::invalid_argument("unknown function: " + args.fn);
    if (args.format != "jsonl" && args.format != "csv")
        throw std::invalid_argument("format must be jsonl or csv");

    bool csv = args.format == "csv";
    if (csv) std::cout << "n,value\n";
    if (args.max == 0) return kExitOk;

    ValueTable tab = bulk_table(*id, args.max);
    for (uint64_t n = 1; n <= args.max; ++n) {
        if (csv) {
            std::cout << n << ',' << tab.at(n) << '\n';
        } else {
            ojson rec;
            rec["schema"] = "1";
            rec["n"] = std::to_string(n);
            rec["value"] = std::to_string(tab.at(n));
            emit(rec);
        }
    }
    return kExitOk;
}

struct SearchArgs {
    std::string kind = "imperfect";
    int m = 1;
    uint64_t k = 2;
    bool k_given = false;
    uint64_t lo = 1;
    uint64_t max = 0;
    bool max_given = false;
    std::string checkpoint;
    int threads = 1;
    uint64_t block = uint64_t{1} << 20;
};

ojson scan_record(const SearchReport& rep) {
    ojson rec;
    rec["schema"] = "1";
    rec["type"] = "search";
    rec["kind"] = rep.kind;
    ojson query;
    if (rep.kind == "imperfect") {
        query["m"] = std::to_string(rep.m);
        query["k"] = std::to_string(rep.k);
    }
    query["lo"] = std::to_string(rep.lo);
    query["hi"] = std::to_string(rep.hi);
    rec["query"] = std::move(query);
    rec["high_water"] = std::to_string(rep.high_water);
    ojson hits = ojson::array();
    for (uint64_t n : rep.hits) hits.push_back(std::to_string(n));
    rec["hits"] = std::move(hits);
    if (!rep.note.empty()) rec["note"] = rep.note;
    return rec;
}

int cmd_search(const SearchArgs& args) {
    if (args.kind == "imperfect" || args.kind == "consecutive" || args.kind == "lehmer") {
        if (!args.max_given) throw std::invalid_argument("--max is required for scans");
        SearchReport rep;
        if (args.kind == "imperfect") {
            ImperfectQuery q{args.m, args.k, args.lo, args.max};
            ScanOptions opt;
            opt.threads = args.threads;
            opt.block = args.block;
            opt.checkpoint_path = args.checkpoint;
            rep = find_mk_imperfect(q, opt);
        } else if (args.kind == "consecutive") {
            rep = find_beta_equal_consecutive(args.max);
        } else {
            rep = lehmer_analog_scan(args.max);
        }
        emit(scan_record(rep));
        std::fprintf(stderr, "elapsed_sec=%.3f\n", rep.elapsed_sec);
        return kExitOk;
    }

    if (args.kind == "mk") {
        std::vector<int> ks = args.k_given ? std::vector<int>{(int)args.k}
                                           : std::vector<int>{2, 3, 4, 5};
        bool all_ok = true;
        for (int k : ks) {
            MkCheck check = mk_imperfect_check(k);
            ojson rec;
            rec["schema"] = "1";
            rec["type"] = "mk_check";
            rec["k"] = std::to_string(check.k);
            rec["m_k"] = to_string(check.m_k);
            rec["beta_m_k"] = to_string(check.beta_m_k);
            rec["imperfect"] = check.imperfect;
            emit(rec);
            all_ok = all_ok && check.imperfect;
        }
        return all_ok ? kExitOk : kExitFinding;
    }

    if (args.kind == "fermat") {
        std::vector<int> ks = args.k_given ? std::vector<int>{(int)args.k}
                                           : std::vector<int>{1, 2, 3, 4, 5, 6};
        bool all_ok = true;
        for (int k : ks) {
            FermatChain chain = fermat_chain_check(k);
            ojson rec;
            rec["schema"] = "1";
            rec["type"] = "fermat_chain";
            rec["k"] = std::to_string(chain.k);
            rec["n_k"] = to_string(chain.n_k);
            ojson factors = ojson::array();
            for (i128 f : chain.fermat_factors) factors.push_back(to_string(f));
            rec["fermat_factors"] = std::move(factors);
            rec["beta_n_k"] = to_string(chain.beta_n_k);
            rec["beta_beta_n_k"] = to_string(chain.beta_beta_n_k);
            rec["product_matches"] = chain.product_matches;
            rec["super_imperfect"] = chain.super_imperfect;
            rec["ok"] = chain.ok;
            emit(rec);
            all_ok = all_ok && chain.ok;
        }
        return all_ok ? kExitOk : kExitFinding;
    }

    throw std::invalid_argument("unknown search kind: " + args.kind);
}

struct VerifyArgs {
    std::string suite;
    uint64_t max = 0;
};

int cmd_verify(const VerifyArgs& args) {
    auto suite = parse_suite(args.suite);
    if (!suite) throw std::invalid_argument("unknown suite: " + args.suite);
    uint64_t max = args.max == 0 ? suite_default_max(*suite) : args.max;

    bool all_ok = true;
    for (const IdentityReport& rep : run_suite(*suite, max)) {
        ojson rec;
        rec["schema"] = "1";
        rec["type"] = "identity";
        rec["suite"] = suite_name(*suite);
        rec["id"] = rep.id;
        rec["range"] = rep.range;
        rec["checked"] = std::to_string(rep.checked);
        rec["ok"] = rep.ok();
        if (rep.counterexample) rec["counterexample"] = *rep.counterexample;
        emit(rec);
        all_ok = all_ok && rep.ok();
    }
    return all_ok ? kExitOk : kExitFinding;
}

struct AsymptoticArgs {
    std::string expr;
    uint64_t x = 0;
    bool x_given = false;
    double tol = 1e-3;
    uint64_t k1_prime_limit = 10000;
    int k1_exponent_limit = 40;
    double t = 0.0;
    bool t_given = false;
    double eps = 0.05;
};

int cmd_asymptotic(const AsymptoticArgs& args) {
    if (args.expr == "liminf") {
        if (!args.x_given) throw std::invalid_argument("--x is required for liminf");
        std::vector<LiminfRecord> records = liminf_trend(args.x);
        ojson rec;
        rec["schema"] = "1";
        rec["type"] = "liminf";
        rec["x"] = std::to_string(args.x);
        rec["e_gamma"] = dstr((double)expl(-Constants::get().euler_gamma));
        ojson rows = ojson::array();
        for (const LiminfRecord& r : records) {
            ojson row;
            row["n"] = std::to_string(r.n);
            row["value"] = dstr(r.value);
            rows.push_back(std::move(row));
        }
        rec["records"] = std::move(rows);
        emit(rec);
        return kExitOk;
    }

    if (args.expr == "density") {
        if (!args.t_given || !args.x_given)
            throw std::invalid_argument("--t and --x are required for density");
        std::optional<uint64_t> witness = density_witness(args.t, args.eps, args.x);
        ojson rec;
        rec["schema"] = "1";
        rec["type"] = "density";
        rec["t"] = dstr(args.t);
        rec["eps"] = dstr(args.eps);
        rec["bound"] = std::to_string(args.x);
        if (witness)
            rec["witness"] = std::to_string(*witness);
        else
            rec["witness"] = nullptr;
        emit(rec);
        return witness ? kExitOk : kExitFinding;
    }

    auto expr = parse_sum_expr(args.expr);
    if (!expr) throw std::invalid_argument("unknown expression: " + args.expr);
    if (!args.x_given) throw std::invalid_argument("--x is required");
    PartialSumEstimate est =
        partial_sum(*expr, args.x, args.k1_prime_limit, args.k1_exponent_limit);

    ojson rec;
    rec["schema"] = "1";
    rec["type"] = "asymptotic";
    rec["expr"] = sum_expr_name(est.expr);
    rec["x"] = std::to_string(est.x);
    rec["sum"] = to_string(est.sum);
    rec["scale_bits"] = std::to_string(est.scale_bits);
    rec["exponent"] = std::to_string(est.exponent);
    rec["leading_constant"] = dstr(est.leading_constant);
    if (est.relative_deviation) rec["relative_deviation"] = dstr(*est.relative_deviation);
    if (est.k1) rec["k1"] = dstr(*est.k1);
    if (est.k2_estimate) rec["k2_estimate"] = dstr(*est.k2_estimate);
    if (est.k1_inner_tail_bound)
        rec["k1_inner_tail_bound"] = dstr(*est.k1_inner_tail_bound);
    emit(rec);

    if (est.relative_deviation && *est.relative_deviation > args.tol) return kExitFinding;
    return kExitOk;
}

struct ExpansionArgs {
    uint64_t n = 0;
    uint64_t terms = 0;
};

int cmd_expansion(const ExpansionArgs& args) {
    ExpansionReport rep = ramanujan_expansion(args.n, args.terms);
    ojson rec;
    rec["schema"] = "1";
    rec["type"] = "expansion";
    rec["n"] = std::to_string(rep.n);
    rec["terms"] = std::to_string(rep.terms);
    rec["partial"] = dstr(rep.partial);
    rec["exact"] = dstr(rep.exact);
    rec["abs_error"] = dstr(rep.abs_error);
    rec["tail_bound"] = dstr(rep.tail_bound);
    emit(rec);
    return rep.abs_error <= rep.tail_bound ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"exact toolkit for the alternating sum-of-divisors function"};
    app.require_subcommand(1);

    ComputeArgs compute_args;
    CLI::App* compute = app.add_subcommand("compute", "evaluate a function at one point");
    compute->add_option("fn", compute_args.fn,
                        "function name (beta, beta_a, theta, lambda, mu, phi, phi_star, "
                        "sigma_a, chi_square, beta_star, a_alt, omega, big_omega)")
        ->required();
    compute->add_option("n", compute_args.n, "argument, a positive integer")->required();
    compute->add_option("--a", compute_args.a, "exponent for beta_a / sigma_a");

    TableArgs table_args;
    CLI::App* table = app.add_subcommand("table", "tabulate a function over 1..max");
    table->add_option("--fn", table_args.fn, "function name")->required();
    table->add_option("--a", table_args.a, "exponent for beta_a / sigma_a");
    table->add_option("--max", table_args.max, "upper bound")->required();
    table->add_option("--format", table_args.format, "jsonl (default) or csv");

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand("search", "scans and structural checks");
    search->add_option("--kind", search_args.kind,
                       "imperfect (default), mk, fermat, consecutive, lehmer");
    search->add_option("--m", search_args.m, "iteration depth for imperfect scans");
    CLI::Option* k_opt = search->add_option("--k", search_args.k, "multiplier / index");
    search->add_option("--min", search_args.lo, "scan lower bound (default 1)");
    CLI::Option* max_opt = search->add_option("--max", search_args.max, "scan upper bound");
    search->add_option("--checkpoint", search_args.checkpoint, "checkpoint file path");
    search->add_option("--threads", search_args.threads, "worker threads (0 = auto)");
    search->add_option("--block", search_args.block, "scan block size");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run an identity suite");
    verify->add_option("--suite", verify_args.suite,
                       "oracle, busche, convolution, product, series, elementary, "
                       "unitary, bigB")
        ->required();
    verify->add_option("--max", verify_args.max, "range bound (0 = suite default)");

    AsymptoticArgs asym_args;
    CLI::App* asym = app.add_subcommand("asymptotic", "partial sums and trend reports");
    asym->add_option("--expr", asym_args.expr,
                     "beta, beta2, beta_n2, beta_sigma, inv_beta, beta_star, liminf, "
                     "density")
        ->required();
    CLI::Option* x_opt = asym->add_option("--x", asym_args.x, "range bound");
    asym->add_option("--tol", asym_args.tol, "deviation tolerance (default 1e-3)");
    asym->add_option("--k1-prime-limit", asym_args.k1_prime_limit,
                     "prime cutoff for the K1 product");
    asym->add_option("--k1-exponent-limit", asym_args.k1_exponent_limit,
                     "inner exponent cutoff for the K1 product");
    CLI::Option* t_opt = asym->add_option("--t", asym_args.t, "density target in [0,1]");
    asym->add_option("--eps", asym_args.eps, "density tolerance (default 0.05)");

    ExpansionArgs exp_args;
    CLI::App* expansion = app.add_subcommand("expansion", "truncated expansion of beta(n)/n");
    expansion->add_option("--n", exp_args.n, "argument")->required();
    expansion->add_option("--terms", exp_args.terms, "truncation rank")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    search_args.k_given = k_opt->count() > 0;
    search_args.max_given = max_opt->count() > 0;
    asym_args.x_given = x_opt->count() > 0;
    asym_args.t_given = t_opt->count() > 0;

    try {
        apply_budget_env();
        if (compute->parsed()) return cmd_compute(compute_args);
        if (table->parsed()) return cmd_table(table_args);
        if (search->parsed()) return cmd_search(search_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (asym->parsed()) return cmd_asymptotic(asym_args);
        if (expansion->parsed()) return cmd_expansion(exp_args);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const checkpoint_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitResource;
    }
}

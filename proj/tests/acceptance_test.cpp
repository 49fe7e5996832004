// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// twelve hold. Tolerances are pinned here and nowhere else.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "altsigma/asymptotics.hpp"
#include "altsigma/factorint.hpp"
#include "altsigma/identities.hpp"
#include "altsigma/multfunc.hpp"
#include "altsigma/numeric.hpp"
#include "altsigma/search.hpp"

using namespace altsigma;

namespace {

constexpr double kDeviationTol = 1e-3;   // leading-term relative deviation
constexpr double kK2Tol = 1e-4;          // K2 agreement across a decade
constexpr double kExpansionTol = 1e-2;   // |partial - beta(n)/n| at R = 10^5
constexpr double kTermTol = 1e-9;        // closed-form leading terms

int failures = 0;

void report(int idx, const char* what, bool ok) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", idx, what);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename Body>
void criterion(int idx, const char* what, Body body) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "criterion %d raised: %s\n", idx, e.what());
    }
    report(idx, what, ok);
}

bool superset(const std::vector<uint64_t>& hits, const std::vector<uint64_t>& want) {
    for (uint64_t w : want)
        if (std::find(hits.begin(), hits.end(), w) == hits.end()) return false;
    return true;
}

bool suites_clean(std::initializer_list<std::pair<Suite, uint64_t>> runs) {
    for (const auto& [s, max] : runs)
        for (const auto& rep : run_suite(s, max))
            if (!rep.ok()) {
                std::fprintf(stderr, "%s: counterexample %s\n", rep.id.c_str(),
                             rep.counterexample->c_str());
                return false;
            }
    return true;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(ALTSIGMA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CliResult r;
    if (!pipe) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

}  // namespace

int main() {
    criterion(1, "gcd-square count equals beta for n <= 10^4", [] {
        auto tab = bulk_table(FunctionId{Fn::beta}, 10000);
        for (uint64_t n = 1; n <= 10000; ++n)
            if (count_gcd_square(n) != (i128)tab.at(n)) return false;
        return true;
    });

    criterion(2, "imperfect numbers to 10^5 plus two large point checks", [] {
        auto rep = find_mk_imperfect({1, 2, 1, 100000});
        if (rep.hits != std::vector<uint64_t>{2, 12, 40, 252, 880, 10880, 75852}) return false;
        for (const char* s : {"715816960", "3074457344902430720"}) {
            i128 n = parse_i128(s);
            if (2 * beta(factorize(n)) != n) return false;
        }
        return true;
    });

    criterion(3, "super-imperfect numbers to 10^7 plus the 2^31 point check", [] {
        ScanOptions opt;
        opt.threads = 4;
        auto rep = find_mk_imperfect({2, 2, 1, 10000000}, opt);
        if (rep.hits != std::vector<uint64_t>{2, 4, 8, 128, 32768}) return false;
        i128 n = parse_i128("2147483648");
        return 2 * iterate_beta(n, 2) == n;
    });

    criterion(4, "(m,k)-imperfect membership for four families", [] {
        return superset(find_mk_imperfect({2, 3, 1, 300}).hits, {3, 15, 18, 36, 72, 255}) &&
               superset(find_mk_imperfect({2, 6, 1, 130}).hits, {6, 12, 24, 30, 60, 120}) &&
               superset(find_mk_imperfect({3, 6, 1, 200}).hits, {6, 36, 144}) &&
               superset(find_mk_imperfect({1, 3, 1, 2520}).hits, {6, 120, 126, 2520});
    });

    criterion(5, "fermat chains super-imperfect through k=5, broken at k=6; m_k imperfect", [] {
        for (int k = 1; k <= 5; ++k) {
            auto c = fermat_chain_check(k);
            if (!(c.ok && c.product_matches && c.super_imperfect)) return false;
        }
        auto c6 = fermat_chain_check(6);
        if (!(c6.ok && c6.product_matches && !c6.super_imperfect)) return false;
        const char* want[] = {"40", "10880", "715816960", "3074457344902430720"};
        for (int k = 2; k <= 5; ++k) {
            auto m = mk_imperfect_check(k);
            if (!m.imperfect || m.m_k != parse_i128(want[k - 2])) return false;
        }
        return true;
    });

    criterion(6, "beta(n) = beta(n+1) exactly seven times up to 740", [] {
        return find_beta_equal_consecutive(740).hits ==
               std::vector<uint64_t>{1, 20, 116, 135, 171, 194, 740};
    });

    criterion(7, "no composite Lehmer analog below 10^6 beyond the documented n=4", [] {
        auto rep = lehmer_analog_scan(1000000);
        return rep.hits.empty() && rep.note.find("n = 4") != std::string::npos;
    });

    criterion(8, "identity suites exact over their spec ranges", [] {
        if (!suites_clean({{Suite::busche, 300},
                           {Suite::convolution, 10000},
                           {Suite::product, 1000},
                           {Suite::elementary, 10000},
                           {Suite::series, 200}}))
            return false;
        // Of the unitary suite only the convolution law is gated here; the
        // counting interpretation knowingly fails at n=4 and is tracked by
        // the unit tests instead.
        for (const auto& rep : run_suite(Suite::unitary, 10000))
            if (rep.id == "beta_star_conv" && !rep.ok()) return false;
        return verify_pointwise_laws(100000).ok();
    });

    criterion(9, "leading-term deviation under 10^-3 for all five power laws", [] {
        if (*partial_sum(SumExpr::beta, 1000000).relative_deviation >= kDeviationTol) return false;
        for (SumExpr e : {SumExpr::beta_sq, SumExpr::beta_n2, SumExpr::beta_sigma, SumExpr::beta_star})
            if (*partial_sum(e, 100000).relative_deviation >= kDeviationTol) return false;
        return true;
    });

    criterion(10, "K2 estimates at 10^5 and 10^6 agree within 10^-4", [] {
        auto a = partial_sum(SumExpr::inv_beta, 100000, 10000, 40);
        auto b = partial_sum(SumExpr::inv_beta, 1000000, 10000, 40);
        return std::abs(*a.k2_estimate - *b.k2_estimate) < kK2Tol;
    });

    criterion(11, "ramanujan expansion close at R=10^5 with matching leading terms", [] {
        for (uint64_t n = 1; n <= 100; ++n)
            if (ramanujan_expansion(n, 100000).abs_error >= kExpansionTol) return false;
        const double pi = std::numbers::pi;
        for (uint64_t n = 1; n <= 48; ++n) {
            auto term = [&](uint64_t r) {
                auto f = factorize(r);
                return (double)liouville(f) * (double)(int64_t)ramanujan_sum(r, n) /
                       (double)(r * r);
            };
            if (std::abs(term(1) - 1.0) > kTermTol) return false;
            if (std::abs(term(2) + (n % 2 ? -1.0 : 1.0) / 4.0) > kTermTol) return false;
            if (std::abs(term(3) + 2.0 * std::cos(2 * pi * (double)(n % 3) / 3.0) / 9.0) > kTermTol)
                return false;
            if (std::abs(term(4) - 2.0 * std::cos(pi * (double)(n % 4) / 2.0) / 16.0) > kTermTol)
                return false;
        }
        return true;
    });

    criterion(12, "repeated and checkpoint-resumed searches byte-identical", [] {
        std::string cp =
            (std::filesystem::temp_directory_path() / "altsigma_acceptance_cp.json").string();
        std::remove(cp.c_str());
        auto a = run_cli("search --kind imperfect --m 1 --k 2 --max 100000");
        auto b = run_cli("search --kind imperfect --m 1 --k 2 --max 100000");
        auto partial = run_cli("search --kind imperfect --m 1 --k 2 --max 40000 --checkpoint " + cp);
        auto resumed = run_cli("search --kind imperfect --m 1 --k 2 --max 100000 --checkpoint " + cp);
        std::remove(cp.c_str());
        return a.code == 0 && b.code == 0 && partial.code == 0 && resumed.code == 0 &&
               !a.out.empty() && a.out == b.out && a.out == resumed.out;
    });

    return failures == 0 ? 0 : 1;
}

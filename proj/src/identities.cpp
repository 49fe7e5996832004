#include "altsigma/identities.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace altsigma {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

i128 count_gcd_square(uint64_t n) {
    if (n == 0) throw std::invalid_argument("count_gcd_square requires n >= 1");
    i128 cnt = 0;
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t g = gcd_u64(k, n);
        uint64_t r = isqrt_u64(g);
        if (r * r == g) ++cnt;
    }
    return cnt;
}

bool verify_liouville_sum(uint64_t n) {
    auto f = factorize(i128(n));
    i128 acc = 0;
    for (i128 d : divisors(f)) acc += liouville(factorize(d));
    return acc == chi_square(i128(n));
}

bool verify_busche_ramanujan(uint64_t n, uint64_t m) {
    uint64_t g = gcd_u64(n, m);
    i128 bn = beta(factorize(i128(n)));
    i128 bm = beta(factorize(i128(m)));
    i128 bnm = beta(factorize(checked_mul(i128(n), i128(m))));
    i128 product_form = 0, factor_form = 0;
    for (i128 d : divisors(factorize(i128(g)))) {
        auto fd = factorize(d);
        i128 term = checked_mul(beta(factorize(i128(n) * i128(m) / (d * d))), d);
        product_form += liouville(fd) > 0 ? term : -term;
        if (is_squarefree(fd))
            factor_form += checked_mul(checked_mul(beta(factorize(i128(n) / d)), beta(factorize(i128(m) / d))), d);
    }
    return bn * bm == product_form && bnm == factor_form;
}

bool verify_supermultiplicative(uint64_t n, uint64_t m) {
    i128 bnm = beta(factorize(checked_mul(i128(n), i128(m))));
    return bnm >= checked_mul(beta(factorize(i128(n))), beta(factorize(i128(m))));
}

bool verify_square_divisor_convolution(uint64_t n) {
    i128 acc = 0;
    for (uint64_t d = 1; d * d <= n; ++d)
        if (n % (d * d) == 0) acc += totient(factorize(i128(n / (d * d))));
    return acc == beta(factorize(i128(n)));
}

bool verify_convolution_identities(uint64_t n) {
    auto fn = factorize(i128(n));
    i128 b = beta(fn);
    i128 lhs_sq = checked_mul(b, b);
    i128 lhs_n2 = beta(factorize(checked_mul(i128(n), i128(n))));
    i128 lhs_bs = checked_mul(b, sigma_a(fn, 1));

    i128 rhs_sq = 0, rhs_n2 = 0, rhs_bs = 0;
    for (i128 d : divisors(fn)) {
        auto fd = factorize(d);
        i128 k = i128(n) / d;
        i128 s2 = sigma_a(factorize(k), 2);
        i128 t = checked_mul(checked_mul(d, i128(1) << fd.omega()), s2);
        rhs_sq += liouville(fd) > 0 ? t : -t;
        int mu = mobius(fd);
        if (mu != 0) rhs_n2 += mu > 0 ? d * s2 : -(d * s2);
    }
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % (d * d) != 0) continue;
        auto fd = factorize(i128(d));
        rhs_bs += checked_mul(checked_mul(i128(d) * d, i128(1) << fd.omega()),
                              beta_a(factorize(i128(n / (d * d))), 2));
    }
    return lhs_sq == rhs_sq && lhs_n2 == rhs_n2 && lhs_bs == rhs_bs;
}

i128 CompletelyMultiplicativeSpec::at_prime(i128 p) const {
    switch (gen) {
        case Gen::power: return checked_pow(p, unsigned(exponent));
        case Gen::liouville: return -1;
        case Gen::unit: return 1;
    }
    return 1;
}

i128 CompletelyMultiplicativeSpec::at(const Factorization& f) const {
    i128 acc = 1;
    for (const auto& [p, e] : f.factors) acc = checked_mul(acc, checked_pow(at_prime(p), unsigned(e)));
    return acc;
}

namespace {

// Dirichlet convolution evaluated on the divisor lattice of one n.
// ds is ascending; a and b hold values on ds.
std::vector<i128> lattice_conv(const std::vector<i128>& ds, const std::vector<i128>& a,
                               const std::vector<i128>& b) {
    auto idx = [&](i128 v) {
        return size_t(std::lower_bound(ds.begin(), ds.end(), v) - ds.begin());
    };
    std::vector<i128> out(ds.size(), 0);
    for (size_t i = 0; i < ds.size(); ++i)
        for (size_t j = 0; j <= i; ++j)
            if (ds[i] % ds[j] == 0) out[i] += checked_mul(a[j], b[idx(ds[i] / ds[j])]);
    return out;
}

}  // namespace

bool verify_product_theorem(const CompletelyMultiplicativeSpec& f, const CompletelyMultiplicativeSpec& g,
                            const CompletelyMultiplicativeSpec& h, const CompletelyMultiplicativeSpec& k,
                            uint64_t n) {
    auto fact_n = factorize(i128(n));
    auto ds = divisors(fact_n);
    const size_t m = ds.size();
    std::vector<i128> fv(m), gv(m), hv(m), kv(m), wv(m);
    for (size_t i = 0; i < m; ++i) {
        auto fd = factorize(ds[i]);
        fv[i] = f.at(fd);
        gv[i] = g.at(fd);
        hv[i] = h.at(fd);
        kv[i] = k.at(fd);
        wv[i] = 0;
        if (is_square(ds[i])) {
            auto fs = factorize(i128(isqrt_u128(u128(ds[i]))));
            int mu = mobius(fs);
            if (mu != 0) {
                i128 w = checked_mul(checked_mul(f.at(fs), g.at(fs)), checked_mul(h.at(fs), k.at(fs)));
                wv[i] = mu > 0 ? w : -w;
            }
        }
    }
    auto mul_pointwise = [&](const std::vector<i128>& a, const std::vector<i128>& b) {
        std::vector<i128> out(m);
        for (size_t i = 0; i < m; ++i) out[i] = checked_mul(a[i], b[i]);
        return out;
    };
    i128 lhs = checked_mul(lattice_conv(ds, fv, gv).back(), lattice_conv(ds, hv, kv).back());
    auto acc = lattice_conv(ds, mul_pointwise(fv, hv), mul_pointwise(fv, kv));
    acc = lattice_conv(ds, acc, mul_pointwise(gv, hv));
    acc = lattice_conv(ds, acc, mul_pointwise(gv, kv));
    acc = lattice_conv(ds, acc, wv);
    return acc.back() == lhs;
}

bool verify_elementary_sum(uint64_t n) {
    i128 sum = 0;
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t g = gcd_u64(k, n);
        uint64_t r = isqrt_u64(g);
        if (r * r == g) sum += k;
    }
    i128 b = beta(factorize(i128(n)));
    return 2 * sum == checked_mul(i128(n), b + chi_square(i128(n)));
}

bool verify_elementary_product(uint64_t n) {
    if (n > 30) throw overflow_error("elementary product check capped at n <= 30");
    if (n == 0) throw std::invalid_argument("verify_elementary_product requires n >= 1");
    cpp_int lhs = 1;
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t g = gcd_u64(k, n);
        uint64_t r = isqrt_u64(g);
        if (r * r == g) lhs *= k;
    }
    auto fn = factorize(i128(n));
    cpp_rational rhs = pow(cpp_int(n), unsigned(int64_t(beta(fn))));
    for (i128 d : divisors(fn)) {
        cpp_int fac = 1, dd = 1;
        for (uint64_t j = 2; j <= uint64_t(d); ++j) fac *= j;
        dd = pow(cpp_int(int64_t(d)), unsigned(int64_t(d)));
        cpp_rational term(fac, dd);
        if (liouville(factorize(i128(n) / d)) > 0)
            rhs *= term;
        else
            rhs /= term;
    }
    return cpp_rational(lhs) == rhs;
}

std::vector<i128> power_series_coefficients(uint64_t n_max) {
    if (n_max == 0) throw std::invalid_argument("power_series_coefficients requires n_max >= 1");
    auto lam = bulk_table({Fn::lambda}, n_max);
    std::vector<i128> coef(n_max + 1, 0);
    // x^n / (1-x^n)^2 = sum_j j x^{jn}
    for (uint64_t n = 1; n <= n_max; ++n) {
        int64_t l = lam.at(n);
        for (uint64_t j = 1; j * n <= n_max; ++j) coef[j * n] += l * i128(j);
    }
    return coef;
}

i128 beta_m_oracle(uint64_t n, int m) {
    if (n == 0 || m < 1) throw std::invalid_argument("beta_m_oracle requires n >= 1, m >= 1");
    u128 budget = 1;
    for (int i = 0; i <= m; ++i) {
        budget *= n;
        if (budget > 100'000'000) throw resource_error("beta_m_oracle brute-force budget exceeded");
    }
    uint64_t N = 1;
    for (int i = 0; i < m; ++i) N *= n;
    auto pow_m = [&](uint64_t d) {
        uint64_t v = 1;
        for (int i = 0; i < m; ++i) v *= d;
        return v;
    };
    i128 cnt = 0;
    for (uint64_t k = 1; k <= N; ++k) {
        uint64_t best = 1;
        for (uint64_t d = 2; d <= n; ++d) {
            uint64_t dm = pow_m(d);
            if (dm > k) break;
            if (k % dm == 0 && N % dm == 0) best = d;
        }
        // d^m is a 2m-th power exactly when d is a square
        uint64_t r = isqrt_u64(best);
        if (r * r == best) ++cnt;
    }
    return cnt;
}

uint64_t unitary_gcd(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) throw std::invalid_argument("unitary_gcd requires a, b >= 1");
    auto uds = unitary_divisors(factorize(i128(b)));
    for (auto it = uds.rbegin(); it != uds.rend(); ++it)
        if (a % uint64_t(*it) == 0) return uint64_t(*it);
    return 1;
}

i128 beta_star_oracle(uint64_t n) {
    if (n == 0) throw std::invalid_argument("beta_star_oracle requires n >= 1");
    auto uds = unitary_divisors(factorize(i128(n)));
    std::sort(uds.begin(), uds.end(), std::greater<>());
    i128 cnt = 0;
    for (uint64_t k = 1; k <= n; ++k) {
        for (i128 d : uds) {
            if (k % uint64_t(d) != 0) continue;
            uint64_t g = uint64_t(d);
            uint64_t r = isqrt_u64(g);
            if (r * r == g) ++cnt;
            break;
        }
    }
    return cnt;
}

std::complex<double> bigB_numeric_oracle(uint64_t r, uint64_t n) {
    if (r == 0 || n == 0) throw std::invalid_argument("bigB_numeric_oracle requires r, n >= 1");
    std::complex<double> acc = 0;
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t g = gcd_u64(k, n);
        uint64_t s = isqrt_u64(g);
        if (s * s != g) continue;
        uint64_t rem = uint64_t((u128(k) * r) % n);
        double angle = 2.0 * std::numbers::pi * double(rem) / double(n);
        acc += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Suite sweeps. Table-driven so the stated ranges stay cheap.

std::optional<Suite> parse_suite(std::string_view name) {
    static const std::pair<std::string_view, Suite> table[] = {
        {"oracle", Suite::oracle},         {"busche", Suite::busche},
        {"convolution", Suite::convolution}, {"product", Suite::product},
        {"series", Suite::series},         {"elementary", Suite::elementary},
        {"unitary", Suite::unitary},       {"bigB", Suite::bigB},
    };
    for (const auto& [key, s] : table)
        if (key == name) return s;
    return std::nullopt;
}

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::oracle: return "oracle";
        case Suite::busche: return "busche";
        case Suite::convolution: return "convolution";
        case Suite::product: return "product";
        case Suite::series: return "series";
        case Suite::elementary: return "elementary";
        case Suite::unitary: return "unitary";
        case Suite::bigB: return "bigB";
    }
    return "?";
}

uint64_t suite_default_max(Suite s) {
    switch (s) {
        case Suite::oracle: return 10'000;
        case Suite::busche: return 300;
        case Suite::convolution: return 10'000;
        case Suite::product: return 1'000;
        case Suite::series: return 200;
        case Suite::elementary: return 10'000;
        case Suite::unitary: return 10'000;
        case Suite::bigB: return 200;
    }
    return 1'000;
}

namespace {

std::string range_str(uint64_t max) { return "1.." + std::to_string(max); }
std::string pair_range_str(uint64_t max) { return "pairs 1.." + std::to_string(max); }

template <class Check>
IdentityReport sweep_single(std::string id, uint64_t max, Check&& check) {
    IdentityReport rep{std::move(id), range_str(max)};
    for (uint64_t n = 1; n <= max; ++n) {
        ++rep.checked;
        if (!check(n)) {
            rep.counterexample = "n=" + std::to_string(n);
            break;
        }
    }
    return rep;
}

template <class Check>
IdentityReport sweep_pairs(std::string id, uint64_t max, Check&& check) {
    IdentityReport rep{std::move(id), pair_range_str(max)};
    for (uint64_t n = 1; n <= max && !rep.counterexample; ++n)
        for (uint64_t m = 1; m <= max; ++m) {
            ++rep.checked;
            if (!check(n, m)) {
                rep.counterexample = "n=" + std::to_string(n) + ",m=" + std::to_string(m);
                break;
            }
        }
    return rep;
}

std::vector<IdentityReport> run_oracle(uint64_t max) {
    PrimeSieve sieve(std::max<uint64_t>(max, 2));
    auto bt = bulk_table({Fn::beta}, max, sieve);
    auto lt = bulk_table({Fn::lambda}, max, sieve);
    auto ct = bulk_table({Fn::chi_square}, max, sieve);

    std::vector<IdentityReport> out;
    out.push_back(sweep_single("gcd_square_count", max,
                               [&](uint64_t n) { return count_gcd_square(n) == i128(bt.at(n)); }));

    {
        IdentityReport rep{"liouville_divisor_sum", range_str(max)};
        std::vector<int64_t> acc(max + 1, 0);
        for (uint64_t d = 1; d <= max; ++d)
            for (uint64_t m = d; m <= max; m += d) acc[m] += lt.at(d);
        for (uint64_t n = 1; n <= max; ++n) {
            ++rep.checked;
            if (acc[n] != ct.at(n)) {
                rep.counterexample = "n=" + std::to_string(n);
                break;
            }
        }
        out.push_back(std::move(rep));
    }

    {
        IdentityReport rep{"gcd_power_count", "m=1 to " + std::to_string(std::min<uint64_t>(max, 100)) +
                                                  "; m=2 to " + std::to_string(std::min<uint64_t>(max, 30))};
        for (uint64_t n = 1; n <= std::min<uint64_t>(max, 100) && !rep.counterexample; ++n) {
            ++rep.checked;
            if (beta_m_oracle(n, 1) != i128(bt.at(n))) rep.counterexample = "n=" + std::to_string(n) + ",m=1";
        }
        for (uint64_t n = 1; n <= std::min<uint64_t>(max, 30) && !rep.counterexample; ++n) {
            ++rep.checked;
            if (beta_m_oracle(n, 2) != beta_a(factorize(i128(n)), 2))
                rep.counterexample = "n=" + std::to_string(n) + ",m=2";
        }
        out.push_back(std::move(rep));
    }

    out.push_back(verify_pointwise_laws(max));
    return out;
}

std::vector<IdentityReport> run_busche(uint64_t max) {
    uint64_t sq = max * max;
    PrimeSieve sieve(std::max<uint64_t>(sq, 2));
    auto bt = bulk_table({Fn::beta}, sq, sieve);
    auto lt = bulk_table({Fn::lambda}, max, sieve);
    auto mt = bulk_table({Fn::mu}, max, sieve);
    std::vector<std::vector<uint32_t>> divs(max + 1);
    for (uint32_t d = 1; d <= max; ++d)
        for (uint64_t m = d; m <= max; m += d) divs[m].push_back(d);

    std::vector<IdentityReport> out;
    out.push_back(sweep_pairs("busche_product_form", max, [&](uint64_t n, uint64_t m) {
        int64_t acc = 0;
        for (uint32_t d : divs[gcd_u64(n, m)]) {
            int64_t term = bt.at(n * m / (uint64_t(d) * d)) * int64_t(d);
            acc += lt.at(d) > 0 ? term : -term;
        }
        return i128(bt.at(n)) * bt.at(m) == i128(acc);
    }));
    out.push_back(sweep_pairs("busche_factor_form", max, [&](uint64_t n, uint64_t m) {
        i128 acc = 0;
        for (uint32_t d : divs[gcd_u64(n, m)])
            if (mt.at(d) != 0) acc += i128(bt.at(n / d)) * bt.at(m / d) * int64_t(d);
        return i128(bt.at(n * m)) == acc;
    }));
    out.push_back(sweep_pairs("supermultiplicative", max, [&](uint64_t n, uint64_t m) {
        return i128(bt.at(n * m)) >= i128(bt.at(n)) * bt.at(m);
    }));
    return out;
}

std::vector<IdentityReport> run_convolution(uint64_t max) {
    PrimeSieve sieve(std::max<uint64_t>(max, 2));
    auto bt = bulk_table({Fn::beta}, max, sieve);
    auto pt = bulk_table({Fn::phi}, max, sieve);
    auto lt = bulk_table({Fn::lambda}, max, sieve);
    auto mt = bulk_table({Fn::mu}, max, sieve);
    auto s1 = bulk_table({Fn::sigma_a, 1}, max, sieve);
    auto s2 = bulk_table({Fn::sigma_a, 2}, max, sieve);
    auto b2 = bulk_table({Fn::beta_a, 2}, max, sieve);
    auto om = bulk_table({Fn::omega_small}, max, sieve);

    std::vector<IdentityReport> out;
    {
        // beta = phi summed over square divisor parts
        IdentityReport rep{"square_divisor_phi", range_str(max)};
        std::vector<int64_t> acc(max + 1, 0);
        for (uint64_t d = 1; d * d <= max; ++d)
            for (uint64_t m = d * d, k = 1; m <= max; m += d * d, ++k) acc[m] += pt.at(k);
        for (uint64_t n = 1; n <= max; ++n) {
            ++rep.checked;
            if (acc[n] != bt.at(n)) {
                rep.counterexample = "n=" + std::to_string(n);
                break;
            }
        }
        out.push_back(std::move(rep));
    }
    {
        IdentityReport sq_rep{"beta_square_conv", range_str(max)};
        IdentityReport n2_rep{"beta_n2_conv", range_str(max)};
        std::vector<i128> acc_sq(max + 1, 0), acc_n2(max + 1, 0);
        for (uint64_t d = 1; d <= max; ++d) {
            i128 g_sq = i128(d) * (int64_t(1) << om.at(d)) * lt.at(d);
            i128 g_n2 = i128(d) * mt.at(d);
            if (g_sq == 0 && g_n2 == 0) continue;
            for (uint64_t m = d, k = 1; m <= max; m += d, ++k) {
                acc_sq[m] += g_sq * s2.at(k);
                acc_n2[m] += g_n2 * s2.at(k);
            }
        }
        // beta(n^2) pointwise from the factorization of n
        for (uint64_t n = 1; n <= max && !sq_rep.counterexample; ++n) {
            ++sq_rep.checked;
            if (acc_sq[n] != i128(bt.at(n)) * bt.at(n)) sq_rep.counterexample = "n=" + std::to_string(n);
        }
        for (uint64_t n = 1; n <= max && !n2_rep.counterexample; ++n) {
            ++n2_rep.checked;
            auto f = factorize(i128(n), &sieve);
            i128 bn2 = 1;
            for (const auto& [p, e] : f.factors) bn2 = checked_mul(bn2, prime_power_value({Fn::beta}, p, 2 * e));
            if (acc_n2[n] != bn2) n2_rep.counterexample = "n=" + std::to_string(n);
        }
        out.push_back(std::move(sq_rep));
        out.push_back(std::move(n2_rep));
    }
    {
        IdentityReport rep{"beta_sigma_conv", range_str(max)};
        std::vector<i128> acc(max + 1, 0);
        for (uint64_t d = 1; d * d <= max; ++d) {
            i128 g = i128(d) * d * (int64_t(1) << om.at(d));
            for (uint64_t m = d * d, k = 1; m <= max; m += d * d, ++k) acc[m] += g * b2.at(k);
        }
        for (uint64_t n = 1; n <= max; ++n) {
            ++rep.checked;
            if (acc[n] != i128(bt.at(n)) * s1.at(n)) {
                rep.counterexample = "n=" + std::to_string(n);
                break;
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<IdentityReport> run_product(uint64_t max) {
    const CompletelyMultiplicativeSpec id{"id", CompletelyMultiplicativeSpec::Gen::power, 1};
    const CompletelyMultiplicativeSpec lam{"lambda", CompletelyMultiplicativeSpec::Gen::liouville, 1};
    const CompletelyMultiplicativeSpec one{"one", CompletelyMultiplicativeSpec::Gen::unit, 1};
    struct Quad {
        const char* label;
        const CompletelyMultiplicativeSpec *f, *g, *h, *k;
    };
    const Quad quads[] = {
        {"id*lambda x id*lambda", &id, &lam, &id, &lam},
        {"id*lambda x id*one", &id, &lam, &id, &one},
        {"id*one x id*one", &id, &one, &id, &one},
    };
    std::vector<IdentityReport> out;
    for (const auto& q : quads) {
        out.push_back(sweep_single(std::string("product_theorem:") + q.label, max,
                                   [&](uint64_t n) { return verify_product_theorem(*q.f, *q.g, *q.h, *q.k, n); }));
    }
    return out;
}

std::vector<IdentityReport> run_series(uint64_t max) {
    auto bt = bulk_table({Fn::beta}, max);
    auto coef = power_series_coefficients(max);
    IdentityReport rep{"lambda_power_series", range_str(max)};
    for (uint64_t n = 1; n <= max; ++n) {
        ++rep.checked;
        if (coef[n] != i128(bt.at(n))) {
            rep.counterexample = "n=" + std::to_string(n);
            break;
        }
    }
    return {std::move(rep)};
}

std::vector<IdentityReport> run_elementary(uint64_t max) {
    std::vector<IdentityReport> out;
    out.push_back(sweep_single("gcd_square_sum", max, verify_elementary_sum));
    uint64_t cap = std::min<uint64_t>(max, 30);
    IdentityReport rep{"gcd_square_product", range_str(cap)};
    for (uint64_t n = 1; n <= cap; ++n) {
        ++rep.checked;
        if (!verify_elementary_product(n)) {
            rep.counterexample = "n=" + std::to_string(n);
            break;
        }
    }
    out.push_back(std::move(rep));
    return out;
}

std::vector<IdentityReport> run_unitary(uint64_t max) {
    PrimeSieve sieve(std::max<uint64_t>(max, 2));
    auto bt = bulk_table({Fn::beta}, max, sieve);
    auto bs = bulk_table({Fn::beta_star}, max, sieve);
    auto mt = bulk_table({Fn::mu}, max, sieve);

    std::vector<IdentityReport> out;
    uint64_t count_cap = std::min<uint64_t>(max, 2'000);
    out.push_back(sweep_single("unitary_gcd_square_count", count_cap,
                               [&](uint64_t n) { return beta_star_oracle(n) == i128(bs.at(n)); }));
    {
        IdentityReport rep{"beta_star_conv", range_str(max)};
        std::vector<i128> acc(max + 1, 0);
        for (uint64_t k = 1; k * k <= max; ++k) {
            if (mt.at(k) == 0) continue;
            for (uint64_t m = k * k, d = 1; m <= max; m += k * k, ++d) acc[m] += i128(k) * bt.at(d);
        }
        for (uint64_t n = 1; n <= max; ++n) {
            ++rep.checked;
            if (acc[n] != bs.at(n)) {
                rep.counterexample = "n=" + std::to_string(n);
                break;
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<IdentityReport> run_bigB(uint64_t max) {
    uint64_t pair_cap = std::min<uint64_t>(max, 200);
    std::vector<IdentityReport> out;
    out.push_back(sweep_pairs("exp_sum_numeric", pair_cap, [&](uint64_t r, uint64_t n) {
        auto num = bigB_numeric_oracle(r, n);
        auto exact = double(int64_t(beta_ramanujan_sum(r, n)));
        return std::abs(num.real() - exact) < 1e-6 && std::abs(num.imag()) < 1e-6;
    }));
    out.push_back(sweep_single("exp_sum_diagonal", max, [&](uint64_t n) {
        return beta_ramanujan_sum(n, n) == beta(factorize(i128(n)));
    }));
    out.push_back(sweep_pairs("eta_partition", pair_cap, [&](uint64_t r, uint64_t n) {
        i128 acc = 0;
        for (i128 d : divisors(factorize(i128(r)))) acc += ramanujan_sum(uint64_t(d), n);
        return acc == i128(eta(r, n));
    }));
    return out;
}

}  // namespace

IdentityReport verify_pointwise_laws(uint64_t max) {
    PrimeSieve sieve(std::max<uint64_t>(max, 2));
    auto bt = bulk_table({Fn::beta}, max, sieve);
    auto pt = bulk_table({Fn::phi}, max, sieve);
    auto ps = bulk_table({Fn::phi_star}, max, sieve);
    auto mt = bulk_table({Fn::mu}, max, sieve);
    return sweep_single("pointwise_laws", max, [&](uint64_t n) {
        int64_t b = bt.at(n);
        bool sq_or_twice = is_square(i128(n)) || (n % 2 == 0 && is_square(i128(n / 2)));
        if (((b & 1) != 0) != sq_or_twice) return false;                  // parity
        if (n != 2 && n != 6 && i128(b) * b < i128(n)) return false;      // beta >= sqrt(n)
        int64_t ph = pt.at(n);
        if (b < ph || uint64_t(b) > n) return false;                      // phi <= beta <= n
        bool squarefree = mt.at(n) != 0;
        if ((b == ph) != squarefree) return false;                        // equality iff squarefree
        if ((uint64_t(b) == n) != (n == 1)) return false;                 // beta = n iff n = 1
        int64_t pstar = ps.at(n);
        if (b > pstar) return false;                                      // beta <= phi_star
        bool twice_squarefree = n % 2 == 0 && mt.at(n / 2) != 0;
        if ((b == pstar) != (squarefree || twice_squarefree)) return false;
        return true;
    });
}

std::vector<IdentityReport> run_suite(Suite s, uint64_t max) {
    if (max == 0) throw std::invalid_argument("suite range must be >= 1");
    switch (s) {
        case Suite::oracle: return run_oracle(max);
        case Suite::busche: return run_busche(max);
        case Suite::convolution: return run_convolution(max);
        case Suite::product: return run_product(max);
        case Suite::series: return run_series(max);
        case Suite::elementary: return run_elementary(max);
        case Suite::unitary: return run_unitary(max);
        case Suite::bigB: return run_bigB(max);
    }
    throw std::logic_error("unknown suite");
}

}  // namespace altsigma

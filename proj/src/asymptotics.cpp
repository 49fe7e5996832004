#include "altsigma/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "altsigma/factorint.hpp"
#include "altsigma/multfunc.hpp"

namespace altsigma {

namespace {

struct KahanAcc {
    long double sum = 0.0L;
    long double carry = 0.0L;

    void add(long double v) {
        long double y = v - carry;
        long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// atan(1/x) for x > 1 by the Taylor series in 1/x.
long double atan_inv(long double x) {
    long double inv = 1.0L / x;
    long double x2 = inv * inv;
    long double pw = inv;
    long double sum = 0.0L;
    for (int k = 0;; ++k) {
        long double t = pw / (2 * k + 1);
        sum += (k & 1) ? -t : t;
        if (t < 1e-25L) break;
        pw *= x2;
    }
    return sum;
}

long double pi_machin() { return 16.0L * atan_inv(5.0L) - 4.0L * atan_inv(239.0L); }

long double pi_euler() { return 4.0L * (atan_inv(2.0L) + atan_inv(3.0L)); }

// zeta(3) = (5/2) sum_{n>=1} (-1)^(n-1) / (n^3 binom(2n,n)).
long double zeta3_central_binomial() {
    long double sum = 0.0L;
    long double binom = 2.0L;  // binom(2n, n) starting at n = 1
    for (int n = 1; n <= 40; ++n) {
        long double t = 1.0L / ((long double)n * n * n * binom);
        sum += (n & 1) ? t : -t;
        binom = binom * 2 * (2 * n + 1) / (n + 1);
    }
    return 2.5L * sum;
}

// Direct sum below N plus the Euler-Maclaurin tail from N; residual O(N^-8).
long double zeta3_euler_maclaurin() {
    const int kN = 2000;
    KahanAcc acc;
    for (int n = kN - 1; n >= 1; --n) acc.add(1.0L / ((long double)n * n * n));
    long double N = kN;
    return acc.sum + 1 / (2 * N * N) + 1 / (2 * N * N * N) +
           1 / (4 * N * N * N * N) - 1 / (12 * N * N * N * N * N * N);
}

// H_N - log N with Euler-Maclaurin corrections; residual O(N^-6).
long double gamma_harmonic() {
    const int kN = 10000;
    KahanAcc acc;
    for (int k = kN; k >= 1; --k) acc.add(1.0L / k);
    long double N = kN;
    return acc.sum - logl(N) - 1 / (2 * N) + 1 / (12 * N * N) -
           1 / (120 * N * N * N * N);
}

// Bessel-ratio form: gamma = A(x)/B(x) - log x + O(e^(-4x)) with
// A = sum (x^n/n!)^2 H_n and B = sum (x^n/n!)^2.
long double gamma_bessel() {
    const long double x = 10.0L;
    long double a = 0.0L, b = 0.0L, term = 1.0L, harmonic = 0.0L;
    for (int n = 0; n <= 90; ++n) {
        if (n > 0) {
            term = term * x / n;
            harmonic += 1.0L / n;
        }
        long double w = term * term;
        a += w * harmonic;
        b += w;
    }
    return a / b - logl(x);
}

constexpr uint64_t kWindow = uint64_t{1} << 20;

}  // namespace

const Constants& Constants::get() {
    static const Constants kConstants = [] {
        Constants c;
        c.pi = pi_machin();
        c.zeta3 = zeta3_central_binomial();
        c.euler_gamma = gamma_harmonic();
        auto close = [](long double u, long double v) { return fabsl(u - v) < 1e-12L; };
        if (!close(c.pi, pi_euler()) || !close(c.zeta3, zeta3_euler_maclaurin()) ||
            !close(c.euler_gamma, gamma_bessel())) {
            throw std::logic_error("constant series cross-check failed");
        }
        c.zeta2 = c.pi * c.pi / 6.0L;
        c.zeta4 = c.pi * c.pi * c.pi * c.pi / 90.0L;
        c.zeta6 = c.pi * c.pi * c.pi * c.pi * c.pi * c.pi / 945.0L;
        return c;
    }();
    return kConstants;
}

const char* sum_expr_name(SumExpr expr) {
    switch (expr) {
        case SumExpr::beta: return "beta";
        case SumExpr::beta_sq: return "beta2";
        case SumExpr::beta_n2: return "beta_n2";
        case SumExpr::beta_sigma: return "beta_sigma";
        case SumExpr::inv_beta: return "inv_beta";
        case SumExpr::beta_star: return "beta_star";
    }
    return "?";
}

std::optional<SumExpr> parse_sum_expr(std::string_view name) {
    for (SumExpr e : {SumExpr::beta, SumExpr::beta_sq, SumExpr::beta_n2,
                      SumExpr::beta_sigma, SumExpr::inv_beta, SumExpr::beta_star}) {
        if (name == sum_expr_name(e)) return e;
    }
    return std::nullopt;
}

long double PartialSumEstimate::value() const {
    return ldexpl((long double)sum, -scale_bits);
}

namespace {

template <typename PerValue>
void stream_blocks(const BlockEvaluator& ev, uint64_t lo, uint64_t hi, PerValue fn) {
    std::vector<int64_t> buf(std::min<uint64_t>(kWindow, hi - lo + 1));
    for (uint64_t base = lo; base <= hi;) {
        uint64_t width = std::min<uint64_t>(buf.size(), hi - base + 1);
        std::span<int64_t> out(buf.data(), width);
        ev.eval(base, out);
        for (uint64_t i = 0; i < width; ++i) fn(base + i, out[i]);
        base += width;
    }
}

i128 beta_n2_sum(uint64_t x) {
    PrimeSieve sieve(std::max<uint64_t>(x, 2));
    i128 acc = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t m = n;
        i128 v = 1;
        while (m > 1) {
            uint32_t p = sieve.spf(m);
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            v = checked_mul(v, prime_power_value({Fn::beta}, p, 2 * e));
        }
        acc = checked_add(acc, v);
    }
    return acc;
}

long double k1_prime_factor_l(long double p, int exponent_limit) {
    long double v = 1.0L;  // beta(p^a) via v_a = p v_{a-1} + (-1)^a
    long double inner = 1.0L;
    for (int a = 1; a <= exponent_limit; ++a) {
        v = p * v + ((a & 1) ? -1.0L : 1.0L);
        inner += 1.0L / v;
        if (v > 1e30L) break;  // remaining terms below representable relative size
    }
    return (1.0L - 1.0L / p) * inner;
}

}  // namespace

PartialSumEstimate partial_sum(SumExpr expr, uint64_t x, uint64_t k1_prime_limit,
                               int k1_exponent_limit) {
    if (x == 0) throw std::invalid_argument("partial_sum: x must be >= 1");
    const Constants& c = Constants::get();

    PartialSumEstimate est;
    est.expr = expr;
    est.x = x;

    i128 acc = 0;
    switch (expr) {
        case SumExpr::beta: {
            BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(x, 2));
            stream_blocks(ev, 1, x,
                          [&](uint64_t, int64_t v) { acc = checked_add(acc, i128(v)); });
            break;
        }
        case SumExpr::beta_star: {
            BlockEvaluator ev({Fn::beta_star}, std::max<uint64_t>(x, 2));
            stream_blocks(ev, 1, x,
                          [&](uint64_t, int64_t v) { acc = checked_add(acc, i128(v)); });
            break;
        }
        case SumExpr::beta_sq: {
            BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(x, 2));
            stream_blocks(ev, 1, x, [&](uint64_t, int64_t v) {
                acc = checked_add(acc, checked_mul(i128(v), i128(v)));
            });
            break;
        }
        case SumExpr::beta_sigma: {
            BlockEvaluator ev_beta({Fn::beta}, std::max<uint64_t>(x, 2));
            BlockEvaluator ev_sigma({Fn::sigma_a, 1}, std::max<uint64_t>(x, 2));
            std::vector<int64_t> b(std::min<uint64_t>(kWindow, x));
            std::vector<int64_t> s(b.size());
            for (uint64_t base = 1; base <= x;) {
                uint64_t width = std::min<uint64_t>(b.size(), x - base + 1);
                ev_beta.eval(base, std::span<int64_t>(b.data(), width));
                ev_sigma.eval(base, std::span<int64_t>(s.data(), width));
                for (uint64_t i = 0; i < width; ++i)
                    acc = checked_add(acc, checked_mul(i128(b[i]), i128(s[i])));
                base += width;
            }
            break;
        }
        case SumExpr::beta_n2:
            acc = beta_n2_sum(x);
            break;
        case SumExpr::inv_beta: {
            BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(x, 2));
            stream_blocks(ev, 1, x, [&](uint64_t, int64_t v) {
                acc = checked_add(acc, i128((u128(1) << 96) / (uint64_t)v));
            });
            break;
        }
    }

    est.sum = acc;
    est.scale_bits = (expr == SumExpr::inv_beta) ? 96 : 0;
    long double total = est.value();
    long double xf = (long double)x;

    switch (expr) {
        case SumExpr::beta:
            est.exponent = 2;
            est.leading_constant = (double)(c.pi * c.pi / 30.0L);
            break;
        case SumExpr::beta_sq:
            est.exponent = 3;
            est.leading_constant = (double)(2.0L * c.zeta3 / 15.0L);
            break;
        case SumExpr::beta_n2:
            est.exponent = 3;
            est.leading_constant = (double)(2.0L * c.zeta3 / (c.pi * c.pi));
            break;
        case SumExpr::beta_sigma:
            est.exponent = 3;
            est.leading_constant =
                (double)(c.pi * c.pi * c.pi * c.pi * c.pi * c.pi / (2430.0L * c.zeta3));
            break;
        case SumExpr::beta_star:
            est.exponent = 2;
            est.leading_constant =
                (double)(63.0L * c.zeta3 / (2.0L * c.pi * c.pi * c.pi * c.pi));
            break;
        case SumExpr::inv_beta: {
            est.exponent = 0;
            double tail = 0.0;
            double k1 = euler_product_k1(k1_prime_limit, k1_exponent_limit, &tail);
            est.k1 = k1;
            est.k1_inner_tail_bound = tail;
            est.k2_estimate = (double)(total - (long double)k1 * logl(xf));
            est.leading_constant = k1;
            return est;
        }
    }

    long double lead = (long double)est.leading_constant;
    long double law = lead * powl(xf, est.exponent);
    est.relative_deviation = (double)fabsl(total / law - 1.0L);
    return est;
}

long double reciprocal_sum_rational(uint64_t x) {
    if (x == 0) throw std::invalid_argument("reciprocal_sum_rational: x must be >= 1");
    if (x > 20000) {
        throw resource_error(
            "reciprocal_sum_rational: reduced denominators grow superlinearly; "
            "use partial_sum(inv_beta) beyond 20000");
    }
    ValueTable tab = bulk_table({Fn::beta}, x);
    boost::multiprecision::cpp_rational acc = 0;
    for (uint64_t n = 1; n <= x; ++n)
        acc += boost::multiprecision::cpp_rational(1, tab.at(n));
    return acc.convert_to<long double>();
}

double euler_product_k1(uint64_t prime_limit, int exponent_limit,
                        double* inner_tail_bound) {
    if (prime_limit < 2) throw std::invalid_argument("euler_product_k1: prime_limit >= 2");
    if (exponent_limit < 1)
        throw std::invalid_argument("euler_product_k1: exponent_limit >= 1");
    const Constants& c = Constants::get();
    PrimeSieve sieve(prime_limit);
    long double prod = c.zeta2 * c.zeta3;
    long double tail = 0.0L;
    for (uint32_t p : sieve.primes()) {
        long double q = 1.0L / p;
        prod *= k1_prime_factor_l(p, exponent_limit) * (1 - q * q) * (1 - q * q * q);
        // 1/beta(p^a) <= 2 p^-a, so the dropped inner mass per prime is
        // below 2 p^-A / (1 - 1/p) <= 4 p^-A.
        tail += 4.0L * powl(q, exponent_limit);
    }
    if (inner_tail_bound) *inner_tail_bound = (double)tail;
    return (double)prod;
}

double k1_prime_factor(uint64_t p, int exponent_limit) {
    if (p < 2) throw std::invalid_argument("k1_prime_factor: p >= 2");
    return (double)k1_prime_factor_l((long double)p, exponent_limit);
}

ExpansionReport ramanujan_expansion(uint64_t n, uint64_t terms) {
    if (n == 0 || terms == 0)
        throw std::invalid_argument("ramanujan_expansion: n and terms must be >= 1");
    const Constants& c = Constants::get();
    ValueTable mu = bulk_table({Fn::mu}, terms);
    ValueTable lam = bulk_table({Fn::lambda}, terms);

    Factorization f = factorize(i128(n));
    std::vector<uint64_t> divs;
    for (i128 d : divisors(f)) divs.push_back((uint64_t)d);

    KahanAcc series;
    for (uint64_t r = 1; r <= terms; ++r) {
        int64_t cr = 0;  // Ramanujan sum c_r(n) over divisors of gcd(r, n)
        for (uint64_t d : divs)
            if (r % d == 0) cr += (int64_t)d * mu.at(r / d);
        if (cr != 0) series.add((long double)lam.at(r) * cr / ((long double)r * r));
    }

    long double scale = c.pi * c.pi / 15.0L;
    ExpansionReport rep;
    rep.n = n;
    rep.terms = terms;
    rep.partial = (double)(scale * series.sum);
    rep.exact = (double)((long double)beta(f) / n);
    rep.abs_error = std::fabs(rep.partial - rep.exact);
    // |c_r(n)| <= sigma(n) and sum_{r>R} r^-2 < 1/R.
    rep.tail_bound = (double)(scale * (long double)sigma_a(f, 1) / terms);
    return rep;
}

std::vector<LiminfRecord> liminf_trend(uint64_t x) {
    if (x < 10) throw std::invalid_argument("liminf_trend: x must be >= 10");
    std::vector<LiminfRecord> records;
    long double best = 1e30L;
    BlockEvaluator ev({Fn::beta}, x);
    stream_blocks(ev, 10, x, [&](uint64_t n, int64_t v) {
        long double val = (long double)v * logl(logl((long double)n)) / n;
        if (val < best) {
            best = val;
            records.push_back({n, (double)val});
        }
    });
    return records;
}

std::optional<uint64_t> density_witness(double t, double eps, uint64_t bound) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("density_witness: t in [0,1]");
    if (!(eps > 0.0)) throw std::invalid_argument("density_witness: eps > 0");
    if (bound == 0) return std::nullopt;
    std::optional<uint64_t> hit;
    BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(bound, 2));
    std::vector<int64_t> buf(std::min<uint64_t>(kWindow, bound));
    for (uint64_t base = 1; base <= bound && !hit;) {
        uint64_t width = std::min<uint64_t>(buf.size(), bound - base + 1);
        std::span<int64_t> out(buf.data(), width);
        ev.eval(base, out);
        for (uint64_t i = 0; i < width; ++i) {
            if (std::fabs((double)out[i] / (double)(base + i) - t) < eps) {
                hit = base + i;
                break;
            }
        }
        base += width;
    }
    return hit;
}

}  // namespace altsigma

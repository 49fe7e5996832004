#include "altsigma/multfunc.hpp"

#include <algorithm>
#include <cassert>

namespace altsigma {

std::string FunctionId::name() const {
    switch (tag) {
        case Fn::beta: return "beta";
        case Fn::beta_a: return "beta_a";
        case Fn::theta: return "theta";
        case Fn::lambda: return "lambda";
        case Fn::mu: return "mu";
        case Fn::phi: return "phi";
        case Fn::phi_star: return "phi_star";
        case Fn::sigma_a: return "sigma_a";
        case Fn::chi_square: return "chi_square";
        case Fn::beta_star: return "beta_star";
        case Fn::a_alt: return "a_alt";
        case Fn::omega_small: return "omega";
        case Fn::omega_big: return "big_omega";
    }
    return "?";
}

std::optional<FunctionId> FunctionId::parse(std::string_view name, int a) {
    static const std::pair<std::string_view, Fn> table[] = {
        {"beta", Fn::beta},           {"beta_a", Fn::beta_a},
        {"theta", Fn::theta},         {"lambda", Fn::lambda},
        {"mu", Fn::mu},               {"phi", Fn::phi},
        {"phi_star", Fn::phi_star},   {"sigma_a", Fn::sigma_a},
        {"chi_square", Fn::chi_square}, {"beta_star", Fn::beta_star},
        {"a_alt", Fn::a_alt},         {"omega", Fn::omega_small},
        {"omega_small", Fn::omega_small}, {"big_omega", Fn::omega_big},
        {"omega_big", Fn::omega_big},
    };
    for (const auto& [key, tag] : table)
        if (key == name) return FunctionId{tag, a};
    return std::nullopt;
}

namespace {

bool additive_tag(Fn tag) { return tag == Fn::omega_small || tag == Fn::omega_big; }

// beta_a(p^e) by Horner: v_j = p^a * v_{j-1} + (-1)^j. Intermediates stay
// within a factor (1 + 1/p^a) of the result, so no gratuitous overflow.
i128 beta_pow_prime_power(i128 q, int e) {
    i128 v = 1;
    for (int j = 1; j <= e; ++j) v = checked_add(checked_mul(q, v), (j & 1) ? i128(-1) : i128(1));
    return v;
}

i128 sigma_prime_power(i128 q, int e) {
    i128 v = 1;
    for (int j = 1; j <= e; ++j) v = checked_add(checked_mul(q, v), 1);
    return v;
}

}  // namespace

i128 prime_power_value(FunctionId id, i128 p, int e) {
    assert(p >= 2 && e >= 1);
    switch (id.tag) {
        case Fn::beta: return beta_pow_prime_power(p, e);
        case Fn::beta_a:
            if (id.a < 0) throw std::invalid_argument("beta_a requires a >= 0");
            return beta_pow_prime_power(checked_pow(p, unsigned(id.a)), e);
        case Fn::theta: {
            i128 b = beta_pow_prime_power(p, e);
            return (e & 1) ? -b : b;
        }
        case Fn::lambda: return (e & 1) ? -1 : 1;
        case Fn::mu: return e == 1 ? -1 : 0;
        case Fn::phi: return checked_mul(checked_pow(p, unsigned(e - 1)), p - 1);
        case Fn::phi_star: return checked_sub(checked_pow(p, unsigned(e)), 1);
        case Fn::sigma_a:
            if (id.a < 0) throw std::invalid_argument("sigma_a requires a >= 0");
            if (id.a == 0) return e + 1;
            return sigma_prime_power(checked_pow(p, unsigned(id.a)), e);
        case Fn::chi_square: return (e & 1) ? 0 : 1;
        case Fn::beta_star: return checked_add(checked_pow(p, unsigned(e)), (e & 1) ? -1 : 1);
        case Fn::omega_small: return 1;
        case Fn::omega_big: return e;
        case Fn::a_alt: break;
    }
    throw std::invalid_argument("a_alt has no prime-power form");
}

i128 point_value(FunctionId id, const Factorization& f) {
    if (id.tag == Fn::a_alt) return alt_divisor_sum(f);
    if (additive_tag(id.tag)) {
        i128 acc = 0;
        for (const auto& [p, e] : f.factors) acc += prime_power_value(id, p, e);
        return acc;
    }
    i128 acc = 1;
    for (const auto& [p, e] : f.factors) acc = checked_mul(acc, prime_power_value(id, p, e));
    return acc;
}

i128 beta(const Factorization& f) { return point_value({Fn::beta}, f); }
i128 beta_a(const Factorization& f, int a) { return point_value({Fn::beta_a, a}, f); }
i128 theta(const Factorization& f) { return point_value({Fn::theta}, f); }
int liouville(const Factorization& f) { return f.big_omega() & 1 ? -1 : 1; }
int mobius(const Factorization& f) { return is_squarefree(f) ? (f.omega() & 1 ? -1 : 1) : 0; }
i128 totient(const Factorization& f) { return point_value({Fn::phi}, f); }
i128 unitary_totient(const Factorization& f) { return point_value({Fn::phi_star}, f); }
i128 sigma_a(const Factorization& f, int a) { return point_value({Fn::sigma_a, a}, f); }
int chi_square(i128 n) { return is_square(n) ? 1 : 0; }
i128 beta_star(const Factorization& f) { return point_value({Fn::beta_star}, f); }

i128 alt_divisor_sum(const Factorization& f) {
    auto ds = divisors(f);
    i128 acc = 0;
    int sign = 1;  // largest divisor first carries +
    for (auto it = ds.rbegin(); it != ds.rend(); ++it, sign = -sign)
        acc = checked_add(acc, sign > 0 ? *it : -*it);
    return acc;
}

i128 ramanujan_sum(uint64_t r, uint64_t n) {
    if (r == 0 || n == 0) throw std::invalid_argument("ramanujan_sum requires r, n >= 1");
    uint64_t g = gcd_u64(r, n);
    i128 acc = 0;
    for (i128 d : divisors(factorize(i128(g)))) {
        int m = mobius(factorize(i128(r) / d));
        if (m != 0) acc += m > 0 ? d : -d;
    }
    return acc;
}

i128 beta_ramanujan_sum(uint64_t r, uint64_t n) {
    if (r == 0 || n == 0) throw std::invalid_argument("beta_ramanujan_sum requires r, n >= 1");
    uint64_t g = gcd_u64(r, n);
    i128 acc = 0;
    for (i128 d : divisors(factorize(i128(g)))) {
        int l = liouville(factorize(i128(n) / d));
        acc += l > 0 ? d : -d;
    }
    return acc;
}

uint64_t eta(uint64_t r, uint64_t n) {
    if (r == 0 || n == 0) throw std::invalid_argument("eta requires r, n >= 1");
    return n % r == 0 ? r : 0;
}

i128 SetMembership::mu_s(uint64_t d) {
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    i128 acc = 0;
    auto f = factorize(i128(d));
    for (i128 c : divisors(f)) {
        if (!contains_(uint64_t(c))) continue;
        int m = mobius(factorize(i128(d) / c));
        acc += m;
    }
    memo_.emplace(d, acc);
    return acc;
}

i128 SetMembership::phi_s(uint64_t n) {
    if (n == 0) throw std::invalid_argument("phi_s requires n >= 1");
    i128 acc = 0;
    for (i128 d : divisors(factorize(i128(n)))) acc = checked_add(acc, checked_mul(d, mu_s(uint64_t(i128(n) / d))));
    return acc;
}

i128 SetMembership::phi_s_count(uint64_t n) const {
    if (n == 0) throw std::invalid_argument("phi_s_count requires n >= 1");
    i128 cnt = 0;
    for (uint64_t k = 1; k <= n; ++k)
        if (contains_(gcd_u64(k, n))) ++cnt;
    return cnt;
}

namespace {

int64_t narrow_entry(i128 v, uint64_t n) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw overflow_error("table entry at n=" + std::to_string(n) + " leaves 64-bit range");
    return int64_t(v);
}

}  // namespace

ValueTable bulk_table(FunctionId fn, uint64_t limit, const PrimeSieve& sieve) {
    if (!fn.sievable()) throw std::invalid_argument("a_alt is not multiplicative; no sieved table");
    if (limit < 1) throw std::invalid_argument("bulk_table requires limit >= 1");
    if (sieve.limit() < limit) throw std::invalid_argument("sieve does not cover requested limit");
    const uint64_t need = (limit + 1) * sizeof(int64_t);
    if (need > memory_budget_bytes())
        throw resource_error("value table of " + std::to_string(limit) + " entries is over the memory budget");

    ValueTable t{fn, limit, std::vector<int64_t>(limit + 1, 0)};
    const bool additive = additive_tag(fn.tag);
    t.values[1] = additive ? 0 : 1;
    for (uint64_t n = 2; n <= limit; ++n) {
        uint64_t p = sieve.spf(n);
        uint64_t m = n / p;
        int e = 1;
        while (m > 1 && sieve.spf(m) == p) {
            m /= p;
            ++e;
        }
        i128 ppv = prime_power_value(fn, i128(p), e);
        i128 v = additive ? i128(t.values[m]) + ppv : checked_mul(i128(t.values[m]), ppv);
        t.values[n] = narrow_entry(v, n);
    }
    return t;
}

ValueTable bulk_table(FunctionId fn, uint64_t limit) {
    PrimeSieve sieve(std::max<uint64_t>(limit, 2));
    return bulk_table(fn, limit, sieve);
}

BlockEvaluator::BlockEvaluator(FunctionId fn, uint64_t hi) : fn_(fn), hi_(hi) {
    if (!fn.sievable()) throw std::invalid_argument("a_alt is not multiplicative; no sieved blocks");
    if (hi < 2) throw std::invalid_argument("BlockEvaluator requires hi >= 2");
    PrimeSieve base(std::max<uint64_t>(isqrt_u64(hi), 2));
    base_primes_ = base.primes();
}

void BlockEvaluator::eval(uint64_t lo, std::span<int64_t> out) const {
    const uint64_t w = out.size();
    if (lo < 1 || w == 0 || lo + w - 1 > hi_) throw std::invalid_argument("window outside [1, hi]");
    const bool additive = additive_tag(fn_.tag);

    std::vector<uint64_t> rem(w);
    for (uint64_t i = 0; i < w; ++i) {
        rem[i] = lo + i;
        out[i] = additive ? 0 : 1;
    }
    auto apply = [&](uint64_t i, i128 ppv, uint64_t n) {
        i128 v = additive ? i128(out[i]) + ppv : checked_mul(i128(out[i]), ppv);
        out[i] = narrow_entry(v, n);
    };
    for (uint32_t p : base_primes_) {
        uint64_t first = (lo + p - 1) / p * uint64_t(p);
        for (uint64_t n = first; n < lo + w; n += p) {
            uint64_t i = n - lo;
            int e = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++e;
            }
            apply(i, prime_power_value(fn_, i128(p), e), n);
        }
    }
    for (uint64_t i = 0; i < w; ++i)
        if (rem[i] > 1) apply(i, prime_power_value(fn_, i128(rem[i]), 1), lo + i);
}

}  // namespace altsigma

#include "altsigma/factorint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace altsigma {

namespace {
std::atomic<uint64_t> g_budget_bytes{512ull << 20};
}

uint64_t memory_budget_bytes() { return g_budget_bytes.load(std::memory_order_relaxed); }
void set_memory_budget_bytes(uint64_t bytes) { g_budget_bytes.store(bytes, std::memory_order_relaxed); }

PrimeSieve::PrimeSieve(uint64_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (limit > UINT32_MAX) throw resource_error("sieve limit exceeds 32-bit spf entry range");
    const uint64_t need = (limit + 1) * sizeof(uint32_t);
    if (need > memory_budget_bytes())
        throw resource_error("sieve of " + std::to_string(limit) + " needs " + std::to_string(need) +
                             " bytes, over the configured budget");
    spf_.assign(limit + 1, 0);
    primes_.reserve(size_t(double(limit) / (std::max(std::log(double(limit)), 1.0)) * 1.15) + 16);
    // Linear sieve: each composite is crossed exactly once by its smallest prime.
    for (uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = uint32_t(i);
            primes_.push_back(uint32_t(i));
        }
        for (uint32_t p : primes_) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

namespace {

void push_factor(Factorization& f, i128 p, int e) {
    if (e > 0) f.factors.push_back({p, e});
}

Factorization factorize_u64_sieve(uint64_t n, const PrimeSieve& sieve) {
    Factorization f;
    f.n = n;
    while (n > 1) {
        uint64_t p = sieve.spf(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        push_factor(f, i128(p), e);
    }
    return f;
}

}  // namespace

Factorization factorize(i128 n, const PrimeSieve* sieve) {
    if (n <= 0) throw std::invalid_argument("factorize requires n >= 1");
    if (sieve != nullptr && u128(n) <= sieve->limit()) return factorize_u64_sieve(uint64_t(n), *sieve);

    Factorization f;
    f.n = n;
    i128 m = n;
    auto strip = [&](i128 p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        push_factor(f, p, e);
    };
    strip(2);
    strip(3);
    for (i128 d = 5; d * d <= m; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (m > 1) push_factor(f, m, 1);
    return f;
}

std::vector<i128> divisors(const Factorization& f) {
    std::vector<i128> ds{1};
    for (const auto& [p, e] : f.factors) {
        size_t base = ds.size();
        ds.reserve(base * (e + 1));
        i128 pe = 1;
        for (int j = 1; j <= e; ++j) {
            pe *= p;  // bounded by n, cannot overflow
            for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<i128> unitary_divisors(const Factorization& f) {
    std::vector<i128> ds{1};
    for (const auto& [p, e] : f.factors) {
        size_t base = ds.size();
        i128 pe = 1;
        for (int j = 0; j < e; ++j) pe *= p;
        for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pe);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

bool is_square(i128 n) {
    if (n < 0) return false;
    u128 r = isqrt_u128(u128(n));
    return r * r == u128(n);
}

bool is_squarefree(const Factorization& f) {
    for (const auto& pf : f.factors)
        if (pf.exp > 1) return false;
    return true;
}

}  // namespace altsigma

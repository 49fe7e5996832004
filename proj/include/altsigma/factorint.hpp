#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "altsigma/numeric.hpp"

namespace altsigma {

// Process-wide cap on the memory any single sieve or value table may claim.
// The CLI wires this to ALTSIGMA_SIEVE_BUDGET_MB.
uint64_t memory_budget_bytes();
void set_memory_budget_bytes(uint64_t bytes);

inline constexpr uint64_t kDefaultSieveLimit = 10'000'000;

struct PrimeFactor {
    i128 p;
    int exp;
    bool operator==(const PrimeFactor&) const = default;
};

struct Factorization {
    i128 n = 1;
    std::vector<PrimeFactor> factors;  // ascending p, exp >= 1

    int omega() const { return int(factors.size()); }
    int big_omega() const {
        int s = 0;
        for (const auto& f : factors) s += f.exp;
        return s;
    }
};

// Smallest-prime-factor table over [2, limit], 32-bit entries.
// A built sieve is immutable and safe to share across threads.
class PrimeSieve {
  public:
    explicit PrimeSieve(uint64_t limit);

    uint64_t limit() const { return limit_; }
    uint32_t spf(uint64_t n) const { return spf_[n]; }
    bool is_prime(uint64_t n) const { return n >= 2 && spf_[n] == n; }
    const std::vector<uint32_t>& primes() const { return primes_; }

  private:
    uint64_t limit_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> primes_;
};

inline PrimeSieve build_sieve(uint64_t limit) { return PrimeSieve(limit); }

// Factors any positive n: spf walk when a sieve covers n, otherwise
// deterministic trial division by 2, 3, then 6k +- 1.
Factorization factorize(i128 n, const PrimeSieve* sieve = nullptr);

// All divisors, ascending. Product-of-(exp+1) many.
std::vector<i128> divisors(const Factorization& f);

// Divisors d with gcd(d, n/d) = 1, ascending. 2^omega many.
std::vector<i128> unitary_divisors(const Factorization& f);

bool is_square(i128 n);
bool is_squarefree(const Factorization& f);

inline uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

}  // namespace altsigma

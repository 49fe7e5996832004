#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "altsigma/factorint.hpp"
#include "altsigma/numeric.hpp"

namespace altsigma {

enum class Fn {
    beta,          // alternating divisor sum: sum_{d|n} d * lambda(n/d)
    beta_a,        // sum_{d|n} d^a * lambda(n/d)
    theta,         // sum_{d|n} d * lambda(d) = lambda(n) * beta(n)
    lambda,        // Liouville (-1)^Omega(n)
    mu,            // Moebius
    phi,           // Euler totient
    phi_star,      // unitary totient, prod (p^a - 1)
    sigma_a,       // sum of a-th powers of divisors
    chi_square,    // 1 iff n is a perfect square
    beta_star,     // unitary analog, prod (p^a + (-1)^a)
    a_alt,         // alternating sum over divisors in decreasing order; not multiplicative
    omega_small,   // number of distinct primes
    omega_big,     // number of primes with multiplicity
};

struct FunctionId {
    Fn tag = Fn::beta;
    int a = 1;  // exponent parameter, meaningful for beta_a / sigma_a only

    bool operator==(const FunctionId&) const = default;
    bool sievable() const { return tag != Fn::a_alt; }
    std::string name() const;

    // Accepts the CLI spellings (beta, beta_a, theta, lambda, mu, phi, phi_star,
    // sigma_a, chi_square, beta_star, a_alt, omega, big_omega).
    static std::optional<FunctionId> parse(std::string_view name, int a = 1);
};

// Value on a prime power p^e. Rejects a_alt (no prime-power form).
i128 prime_power_value(FunctionId id, i128 p, int e);

// Value from a factorization; handles every tag including a_alt.
i128 point_value(FunctionId id, const Factorization& f);

i128 beta(const Factorization& f);
i128 beta_a(const Factorization& f, int a);
i128 theta(const Factorization& f);
int liouville(const Factorization& f);
int mobius(const Factorization& f);
i128 totient(const Factorization& f);
i128 unitary_totient(const Factorization& f);
i128 sigma_a(const Factorization& f, int a);
int chi_square(i128 n);
i128 beta_star(const Factorization& f);
i128 alt_divisor_sum(const Factorization& f);

// Ramanujan sum c_r(n) = sum_{d | gcd(r,n)} d * mu(r/d).
i128 ramanujan_sum(uint64_t r, uint64_t n);

// B(r,n) = sum_{d | gcd(r,n)} d * lambda(n/d); equals beta(n) at r = n.
i128 beta_ramanujan_sum(uint64_t r, uint64_t n);

// eta_r(n) = r when r | n else 0.
uint64_t eta(uint64_t r, uint64_t n);

// Divisor-membership transform for a decidable set S. mu_S is the Moebius
// inverse of the indicator, memoized per instance; instances are cheap to make
// for a new S but not thread-safe to share while evaluating.
class SetMembership {
  public:
    explicit SetMembership(std::function<bool(uint64_t)> contains)
        : contains_(std::move(contains)) {}

    bool contains(uint64_t v) const { return contains_(v); }
    i128 mu_s(uint64_t d);           // sum_{e|d} mu(e) [d/e in S]
    i128 phi_s(uint64_t n);          // sum_{d|n} d * mu_s(n/d)
    i128 phi_s_count(uint64_t n) const;  // direct #{k <= n : gcd(k,n) in S}

  private:
    std::function<bool(uint64_t)> contains_;
    std::unordered_map<uint64_t, i128> memo_;
};

struct ValueTable {
    FunctionId fn;
    uint64_t limit = 0;
    std::vector<int64_t> values;  // index n in [1, limit]; values[0] unused

    int64_t at(uint64_t n) const { return values[n]; }
};

// Dense table of a sievable function over [1, limit], one spf-driven pass.
// Throws resource_error over budget and std::invalid_argument for a_alt;
// overflow_error if any entry leaves the 64-bit range.
ValueTable bulk_table(FunctionId fn, uint64_t limit);
ValueTable bulk_table(FunctionId fn, uint64_t limit, const PrimeSieve& sieve);

// Segmented evaluation of a sievable function over windows of [2, hi] using
// only the primes up to sqrt(hi). Immutable once built; eval is const and
// safe to call from several threads with distinct output buffers.
class BlockEvaluator {
  public:
    BlockEvaluator(FunctionId fn, uint64_t hi);

    // Fills out[i] with fn(lo + i) for lo + i <= hi_window; out.size() sets
    // the window width. Requires lo >= 1.
    void eval(uint64_t lo, std::span<int64_t> out) const;

    uint64_t hi() const { return hi_; }

  private:
    FunctionId fn_;
    uint64_t hi_;
    std::vector<uint32_t> base_primes_;
};

}  // namespace altsigma

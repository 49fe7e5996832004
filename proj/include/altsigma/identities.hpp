#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altsigma/factorint.hpp"
#include "altsigma/multfunc.hpp"
#include "altsigma/numeric.hpp"

namespace altsigma {

struct IdentityReport {
    std::string id;
    std::string range;
    uint64_t checked = 0;
    std::optional<std::string> counterexample;

    IdentityReport() = default;
    IdentityReport(std::string id_, std::string range_)
        : id(std::move(id_)), range(std::move(range_)) {}

    bool ok() const { return !counterexample.has_value(); }
};

// #{k <= n : gcd(k, n) is a perfect square}; the counting face of beta.
i128 count_gcd_square(uint64_t n);

// sum_{d|n} lambda(d) == [n is a square]
bool verify_liouville_sum(uint64_t n);

// Both shapes of the Busche-Ramanujan relation:
//   beta(n) beta(m) == sum_{d | (n,m)} beta(nm/d^2) d lambda(d)
//   beta(nm)        == sum_{d | (n,m)} beta(n/d) beta(m/d) d mu^2(d)
bool verify_busche_ramanujan(uint64_t n, uint64_t m);

// beta(nm) >= beta(n) beta(m)
bool verify_supermultiplicative(uint64_t n, uint64_t m);

// beta(n) == sum_{d^2 k = n} phi(k)
bool verify_square_divisor_convolution(uint64_t n);

// The three divisor convolutions:
//   beta(n)^2        == sum_{dk=n} d 2^omega(d) lambda(d) sigma_2(k)
//   beta(n^2)        == sum_{dk=n} d mu(d) sigma_2(k)
//   beta(n) sigma(n) == sum_{d^2 k = n} d^2 2^omega(d) beta_2(k)
bool verify_convolution_identities(uint64_t n);

// Parity and inequality laws over [1, max] in one sieved pass: beta(n) is
// odd iff n is a square or twice a square; beta(n)^2 >= n outside {2, 6};
// phi <= beta <= n and beta <= phi_star with their equality cases.
IdentityReport verify_pointwise_laws(uint64_t max);

// A completely multiplicative function given by its value on primes.
struct CompletelyMultiplicativeSpec {
    enum class Gen { power, liouville, unit };
    std::string name;
    Gen gen = Gen::power;
    int exponent = 1;  // power: p -> p^exponent

    i128 at_prime(i128 p) const;
    i128 at(const Factorization& f) const;
};

// (f*g)(h*k) == fh*fk*gh*gk*w with w supported on squares,
// w(s^2) = mu(s) f(s) g(s) h(s) k(s).
bool verify_product_theorem(const CompletelyMultiplicativeSpec& f, const CompletelyMultiplicativeSpec& g,
                            const CompletelyMultiplicativeSpec& h, const CompletelyMultiplicativeSpec& k,
                            uint64_t n);

// sum of k <= n with gcd(k,n) square == n (beta(n) + chi(n)) / 2
bool verify_elementary_sum(uint64_t n);

// prod of k <= n with gcd(k,n) square == n^beta(n) prod_{d|n} (d!/d^d)^lambda(n/d),
// checked in exact rational arithmetic. Capped at n <= 30.
bool verify_elementary_product(uint64_t n);

// Coefficients 1..N of sum_n lambda(n) x^n / (1 - x^n)^2; index 0 unused.
std::vector<i128> power_series_coefficients(uint64_t n_max);

// #{k <= n^m : largest common m-th power divisor of k and n^m is a 2m-th power}.
// Brute force; requires n^m <= 10^6.
i128 beta_m_oracle(uint64_t n, int m);

// Largest divisor of a that is a unitary divisor of b.
uint64_t unitary_gcd(uint64_t a, uint64_t b);

// #{k <= n : unitary_gcd(k, n) is a perfect square}
i128 beta_star_oracle(uint64_t n);

// sum_{k <= n, gcd(k,n) square} exp(2 pi i k r / n), evaluated numerically.
std::complex<double> bigB_numeric_oracle(uint64_t r, uint64_t n);

enum class Suite { oracle, busche, convolution, product, series, elementary, unitary, bigB };

std::optional<Suite> parse_suite(std::string_view name);
std::string suite_name(Suite s);
uint64_t suite_default_max(Suite s);

// Runs every identity in the suite over [1, max] (pair identities over the
// square), reporting the first counterexample per identity.
std::vector<IdentityReport> run_suite(Suite s, uint64_t max);

}  // namespace altsigma

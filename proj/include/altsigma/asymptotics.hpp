#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "altsigma/numeric.hpp"

namespace altsigma {

// Shared constants, each computed from a rapidly convergent series and
// cross-checked against a second, independent series at first use.
struct Constants {
  long double pi;
  long double zeta2;
  long double zeta3;
  long double zeta4;
  long double zeta6;
  long double euler_gamma;

  static const Constants& get();
};

enum class SumExpr { beta, beta_sq, beta_n2, beta_sigma, inv_beta, beta_star };

const char* sum_expr_name(SumExpr expr);
std::optional<SumExpr> parse_sum_expr(std::string_view name);

struct PartialSumEstimate {
  SumExpr expr;
  uint64_t x = 0;
  // Exact accumulation: plain integer sum, except inv_beta where sum holds
  // sum over n of floor(2^96 / beta(n)) and scale_bits is 96.
  i128 sum = 0;
  int scale_bits = 0;
  int exponent = 0;  // growth law x^exponent; 0 marks the logarithmic law
  double leading_constant = 0.0;
  std::optional<double> relative_deviation;  // absent for inv_beta
  std::optional<double> k1;                  // inv_beta only
  std::optional<double> k2_estimate;         // inv_beta only
  std::optional<double> k1_inner_tail_bound; // inv_beta only

  long double value() const;  // sum / 2^scale_bits
};

// Exact partial sum of the chosen expression over 1..x plus the deviation
// from its leading term. Laws: quadratic for beta and beta_star, cubic for
// beta_sq, beta_n2 and beta_sigma, K1 log x + K2 for inv_beta. The K1
// truncation parameters only affect inv_beta.
PartialSumEstimate partial_sum(SumExpr expr, uint64_t x,
                               uint64_t k1_prime_limit = 10000,
                               int k1_exponent_limit = 40);

// sum over n <= x of 1/beta(n) as an exact rational, converted on return.
// Reduced denominators grow like 0.09 * x digits, so the rational path is
// capped at x = 20000; larger x goes through partial_sum(inv_beta, x).
long double reciprocal_sum_rational(uint64_t x);

// K1 = prod_p (1 - 1/p)(1 + sum_{a>=1} 1/beta(p^a)). The truncated product
// is multiplied by zeta(2) zeta(3) and each factor by (1-p^-2)(1-p^-3), so
// the dropped primes contribute 1 + O(p^-4) each instead of 1 + O(p^-2).
// The inner sums truncate at exponent_limit; a geometric bound on the total
// dropped inner mass is written to inner_tail_bound when non-null.
double euler_product_k1(uint64_t prime_limit, int exponent_limit,
                        double* inner_tail_bound = nullptr);

// One truncated factor (1 - 1/p)(1 + sum_{a<=exponent_limit} 1/beta(p^a)).
double k1_prime_factor(uint64_t p, int exponent_limit);

struct ExpansionReport {
  uint64_t n = 0;
  uint64_t terms = 0;  // truncation rank R
  double partial = 0.0;
  double exact = 0.0;  // beta(n)/n
  double abs_error = 0.0;
  double tail_bound = 0.0;  // (pi^2/15) sigma(n) / R
};

// Truncation of beta(n)/n = (pi^2/15) sum_r lambda(r) c_r(n) / r^2 at rank
// terms, where c_r is the Ramanujan sum.
ExpansionReport ramanujan_expansion(uint64_t n, uint64_t terms);

struct LiminfRecord {
  uint64_t n = 0;
  double value = 0.0;  // beta(n) log log n / n
};

// Running minima of beta(n) log log n / n over 10 <= n <= x, for inspection
// against exp(-euler_gamma). No convergence claim is made.
std::vector<LiminfRecord> liminf_trend(uint64_t x);

// Smallest n <= bound with |beta(n)/n - t| < eps, if any.
std::optional<uint64_t> density_witness(double t, double eps, uint64_t bound);

}  // namespace altsigma

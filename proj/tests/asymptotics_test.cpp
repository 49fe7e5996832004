#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "altsigma/asymptotics.hpp"
#include "altsigma/factorint.hpp"
#include "altsigma/multfunc.hpp"
#include "altsigma/numeric.hpp"

using namespace altsigma;
using doctest::Approx;

TEST_CASE("shared constants match reference digits") {
    const Constants& c = Constants::get();
    CHECK(std::abs(c.pi - 3.141592653589793238462643L) < 1e-17L);
    CHECK(std::abs(c.zeta2 - 1.644934066848226436472415L) < 1e-17L);
    CHECK(std::abs(c.zeta3 - 1.202056903159594285399738L) < 1e-17L);
    CHECK(std::abs(c.zeta4 - 1.082323233711138191516004L) < 1e-17L);
    CHECK(std::abs(c.zeta6 - 1.017343061984449139714518L) < 1e-17L);
    CHECK(std::abs(c.euler_gamma - 0.577215664901532860606512L) < 1e-17L);
    CHECK(&Constants::get() == &c);
}

TEST_CASE("expression names round trip") {
    for (SumExpr e : {SumExpr::beta, SumExpr::beta_sq, SumExpr::beta_n2, SumExpr::beta_sigma,
                      SumExpr::inv_beta, SumExpr::beta_star}) {
        auto back = parse_sum_expr(sum_expr_name(e));
        REQUIRE(back.has_value());
        CHECK(*back == e);
    }
    CHECK_FALSE(parse_sum_expr("beta3").has_value());
}

TEST_CASE("partial sums are exact and deviations sit under their leading terms") {
    struct Row {
        SumExpr expr;
        uint64_t x;
        const char* sum;
        int exponent;
        double constant;
    };
    const Row rows[] = {
        {SumExpr::beta, 100000, "3289890783", 2, 0.3289868133696453},
        {SumExpr::beta, 1000000, "328986877961", 2, 0.3289868133696453},
        {SumExpr::beta_sq, 100000, "160274159514747", 3, 0.16027425375461257},
        {SumExpr::beta_sq, 1000000, "160274007959849203", 3, 0.16027425375461257},
        {SumExpr::beta_n2, 100000, "243590369765268", 3, 0.24358765646714617},
        {SumExpr::beta_n2, 1000000, "243587768390940196", 3, 0.24358765646714617},
        {SumExpr::beta_sigma, 100000, "329137272934569", 3, 0.3291303531089369},
        {SumExpr::beta_sigma, 1000000, "329131072219554529", 3, 0.3291303531089369},
        {SumExpr::beta_star, 100000, "3887235709", 2, 0.38871928736415184},
        {SumExpr::beta_star, 1000000, "388719580158", 2, 0.38871928736415184},
    };
    for (const Row& r : rows) {
        auto est = partial_sum(r.expr, r.x);
        CHECK(est.sum == parse_i128(r.sum));
        CHECK(est.scale_bits == 0);
        CHECK(est.exponent == r.exponent);
        CHECK(est.leading_constant == Approx(r.constant).epsilon(1e-12));
        REQUIRE(est.relative_deviation.has_value());
        CHECK(*est.relative_deviation < 1e-3);
        CHECK((long double)est.value() == (long double)est.sum);
    }
}

TEST_CASE("deviation shrinks from x=10^4 to x=10^6 for every power law") {
    for (SumExpr e : {SumExpr::beta, SumExpr::beta_sq, SumExpr::beta_n2, SumExpr::beta_sigma,
                      SumExpr::beta_star}) {
        auto lo = partial_sum(e, 10000);
        auto hi = partial_sum(e, 1000000);
        REQUIRE(lo.relative_deviation.has_value());
        REQUIRE(hi.relative_deviation.has_value());
        CHECK(*hi.relative_deviation < *lo.relative_deviation);
    }
}

TEST_CASE("truncated euler factor at p=2 is exactly 7/6") {
    CHECK(k1_prime_factor(2, 2) == Approx(7.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("K1 product is stable under doubling either truncation") {
    double tail = 0.0;
    double k1 = euler_product_k1(10000, 40, &tail);
    CHECK(k1 == Approx(1.7236098967366387).epsilon(1e-12));
    CHECK(tail > 0.0);
    CHECK(tail < 1e-10);
    CHECK(std::abs(k1 - euler_product_k1(20000, 40)) < 1e-8);
    CHECK(std::abs(k1 - euler_product_k1(10000, 80)) < 1e-8);
}

TEST_CASE("reciprocal sum: K2 estimates agree across a decade") {
    auto a = partial_sum(SumExpr::inv_beta, 100000);
    auto b = partial_sum(SumExpr::inv_beta, 1000000);
    CHECK(a.scale_bits == 96);
    CHECK(a.exponent == 0);
    CHECK_FALSE(a.relative_deviation.has_value());
    REQUIRE(a.k1.has_value());
    REQUIRE(a.k2_estimate.has_value());
    REQUIRE(b.k2_estimate.has_value());
    CHECK(*a.k1 == Approx(1.7236098967366387).epsilon(1e-12));
    CHECK(*a.k2_estimate == Approx(0.21471380883067517).epsilon(1e-9));
    CHECK(std::abs(*a.k2_estimate - *b.k2_estimate) < 1e-4);
}

TEST_CASE("fixed-point reciprocal sums track the exact rational path") {
    for (uint64_t x : {uint64_t{100}, uint64_t{2000}, uint64_t{20000}}) {
        long double exact = reciprocal_sum_rational(x);
        long double fixed = partial_sum(SumExpr::inv_beta, x).value();
        CHECK(std::abs(exact - fixed) < 1e-15L);
    }
    CHECK_THROWS_AS(reciprocal_sum_rational(20001), resource_error);
}

TEST_CASE("ramanujan expansion: frozen n=30 profile") {
    auto rep = ramanujan_expansion(30, 100000);
    CHECK(rep.exact == Approx(4.0 / 15.0).epsilon(1e-15));
    CHECK(rep.abs_error < 1e-9);
    CHECK(rep.abs_error <= rep.tail_bound);
    CHECK(rep.tail_bound == Approx(0.0004737410112522892).epsilon(1e-9));
}

TEST_CASE("ramanujan expansion error respects the sigma tail bound") {
    for (uint64_t n = 1; n <= 20; ++n)
        for (uint64_t terms : {uint64_t{500}, uint64_t{2000}}) {
            auto rep = ramanujan_expansion(n, terms);
            CHECK(rep.abs_error <= rep.tail_bound);
        }
}

TEST_CASE("leading expansion terms match their closed trigonometric forms") {
    const double pi = std::numbers::pi;
    for (uint64_t n = 1; n <= 48; ++n) {
        auto term = [&](uint64_t r) {
            auto f = factorize(r);
            return (double)liouville(f) * (double)(int64_t)ramanujan_sum(r, n) / (double)(r * r);
        };
        CHECK(term(1) == Approx(1.0).epsilon(1e-12));
        CHECK(term(2) == Approx(-(n % 2 ? -1.0 : 1.0) / 4.0).epsilon(1e-12));
        CHECK(term(3) == Approx(-2.0 * std::cos(2 * pi * (double)(n % 3) / 3.0) / 9.0).epsilon(1e-12));
        CHECK(term(4) == Approx(2.0 * std::cos(pi * (double)(n % 4) / 2.0) / 16.0).epsilon(1e-12));
    }
}

TEST_CASE("liminf trend records exactly the two known minima") {
    auto recs = liminf_trend(100000);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].n == 10);
    CHECK(recs[0].value == Approx(0.33361297809918233).epsilon(1e-14));
    CHECK(recs[1].n == 30);
    CHECK(recs[1].value == Approx(0.3264340108537445).epsilon(1e-14));
    CHECK(recs[1].value < recs[0].value);
    CHECK_THROWS_AS(liminf_trend(9), std::invalid_argument);
}

TEST_CASE("density witnesses are the first qualifying integers") {
    CHECK(density_witness(1.0, 0.05, 10) == 1);
    CHECK(density_witness(0.5, 0.05, 100) == 2);
    CHECK(density_witness(0.3, 0.05, 100) == 6);
    CHECK(density_witness(0.9, 0.05, 100) == 7);
    CHECK_FALSE(density_witness(0.01, 0.001, 1000).has_value());
    CHECK_THROWS_AS(density_witness(-0.1, 0.05, 100), std::invalid_argument);
    CHECK_THROWS_AS(density_witness(1.5, 0.05, 100), std::invalid_argument);
    CHECK_THROWS_AS(density_witness(0.5, 0.0, 100), std::invalid_argument);
}

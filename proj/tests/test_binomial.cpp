#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "scenbound/binomial.hpp"
#include "scenbound/exact.hpp"

using namespace scenbound;

TEST_CASE("log_binomial matches hand values", "[binomial]") {
    CHECK(log_binomial(5, 2).log_magnitude == Catch::Approx(std::log(10.0)).epsilon(1e-14));
    CHECK(log_binomial(0, 0).log_magnitude == 0.0);  // empty product, exact
    CHECK(log_binomial(7, 0).log_magnitude == 0.0);
    CHECK(log_binomial(7, 7).log_magnitude == 0.0);
    CHECK(log_binomial(10, 1).log_magnitude == Catch::Approx(std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("log_binomial matches the big-integer oracle", "[binomial]") {
    // C(500,100) overflows nothing in log domain; certify against exact integers.
    const struct {
        long long n, k;
    } cases[] = {{500, 100}, {500, 250}, {2000, 3}, {60, 30}, {123, 77}};
    for (const auto& c : cases) {
        const exact::BigInt b = exact::binomial(c.n, c.k);
        const double expected = std::log(b.convert_to<double>());
        CHECK(log_binomial(c.n, c.k).log_magnitude ==
              Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("log_binomial rejects out-of-range k", "[binomial]") {
    CHECK_THROWS_AS(log_binomial(5, -1), std::domain_error);
    CHECK_THROWS_AS(log_binomial(5, 6), std::domain_error);
    CHECK_THROWS_AS(log_binomial(-1, 0), std::domain_error);
}

TEST_CASE("LogValue conversion clamps into [0,1]", "[binomial]") {
    CHECK(LogValue::from_log(0.5).to_probability() == 1.0);
    CHECK(LogValue::from_log(0.0).to_probability() == 1.0);
    CHECK(LogValue::from_log(-1.0).to_probability() == Catch::Approx(std::exp(-1.0)));
    CHECK(LogValue::zero().to_probability() == 0.0);
    CHECK((LogValue::one() * LogValue::zero()).to_probability() == 0.0);
}

TEST_CASE("LogSumExp agrees with direct summation", "[binomial]") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> mag(-30.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        LogSumExp acc;
        double direct = 0.0;
        for (int i = 0; i < 40; ++i) {
            const double x = mag(gen);
            acc.add(x);
            direct += std::exp(x);
        }
        CHECK(acc.value() == Catch::Approx(std::log(direct)).epsilon(1e-13));
    }
    LogSumExp empty;
    CHECK(empty.value() == kNegInf);
    LogSumExp with_zero;
    with_zero.add(kNegInf);
    with_zero.add(-2.0);
    CHECK(with_zero.value() == Catch::Approx(-2.0));
}

TEST_CASE("binomial lower tail edge cases", "[binomial]") {
    CHECK(log_binomial_lower_tail(10, -1, 0.5).log_magnitude == kNegInf);   // empty sum
    CHECK(log_binomial_lower_tail(10, 10, 0.5).log_magnitude == 0.0);       // full sum
    CHECK(log_binomial_lower_tail(10, 12, 0.5).log_magnitude == 0.0);
    // P[Bin(10, 1/2) <= 1] = 11/1024
    CHECK(log_binomial_lower_tail(10, 1, 0.5).to_probability() ==
          Catch::Approx(11.0 / 1024.0).epsilon(1e-13));
    // every term carries a (1-eps) power when j < N
    CHECK(log_binomial_lower_tail(10, 4, 1.0).log_magnitude == kNegInf);
    // eps = 0: only the i = 0 term survives and equals 1
    CHECK(log_binomial_lower_tail(10, 4, 0.0).log_magnitude == 0.0);
}

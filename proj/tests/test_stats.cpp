#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fiq/stats.hpp"

TEST_CASE("chi-squared tail probabilities") {
    // Frozen reference values (e.g. P(X >= 3.84) ~ 0.05 for df=1).
    CHECK_THAT(fiq::chi_squared_p_value(3.841458820694124, 1), Catch::Matchers::WithinAbs(0.05, 1e-9));
    CHECK_THAT(fiq::chi_squared_p_value(14.067140449340169, 7), Catch::Matchers::WithinAbs(0.05, 1e-9));
    CHECK(fiq::chi_squared_p_value(0.0, 5) == 1.0);
}

TEST_CASE("two-sample chi-square accepts same-distribution histograms") {
    std::mt19937_64 gen(5);
    std::vector<std::uint64_t> a(8, 0), b(8, 0);
    for (int i = 0; i < 8000; ++i) a[gen() % 8]++;
    for (int i = 0; i < 8000; ++i) b[gen() % 8]++;
    const auto res = fiq::chi_square_two_sample(a, b);
    CHECK(res.df == 7);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("two-sample chi-square rejects disjoint histograms") {
    std::vector<std::uint64_t> a = {1000, 0, 0, 0};
    std::vector<std::uint64_t> b = {0, 0, 0, 1000};
    const auto res = fiq::chi_square_two_sample(a, b);
    CHECK(res.p_value < 1e-6);
}

TEST_CASE("identical histograms give statistic zero") {
    std::vector<std::uint64_t> a = {10, 20, 30};
    const auto res = fiq::chi_square_two_sample(a, a);
    CHECK(res.statistic == 0.0);
    CHECK(res.p_value == 1.0);
}

TEST_CASE("binomial band matches the quoted calibration width") {
    // 4 sigma at q=3/10 over 1e5 draws is about +-0.0058.
    CHECK_THAT(fiq::binomial_band(0.3, 100000, 4.0), Catch::Matchers::WithinAbs(0.0058, 1e-4));
}

TEST_CASE("sample variance of a known set") {
    CHECK_THAT(fiq::sample_variance({1.0, 2.0, 3.0, 4.0}), Catch::Matchers::WithinAbs(5.0 / 3.0, 1e-12));
    CHECK_THROWS_AS(fiq::sample_variance({1.0}), std::invalid_argument);
}

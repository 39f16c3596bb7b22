#ifndef FIQ_STATS_HPP
#define FIQ_STATS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "fiq/rational.hpp"

namespace fiq {

/// Upper tail P(X >= stat) for a chi-squared variable with df degrees of freedom.
inline double chi_squared_p_value(double stat, double df) {
    if (df <= 0) throw std::invalid_argument("degrees of freedom must be positive");
    if (stat <= 0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

struct ChiSquareResult {
    double statistic;
    double df;
    double p_value;
};

/// Two-sample chi-square test that two histograms over the same cells are
/// draws from one distribution (Press et al., chstwo). Cells empty in both
/// samples are skipped.
inline ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("histograms must have equal cell counts");
    double total_a = 0, total_b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total_a += static_cast<double>(a[i]);
        total_b += static_cast<double>(b[i]);
    }
    if (total_a == 0 || total_b == 0) throw std::invalid_argument("empty histogram");
    const double ra = std::sqrt(total_b / total_a);
    const double rb = std::sqrt(total_a / total_b);
    double stat = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]);
        const double bi = static_cast<double>(b[i]);
        if (ai == 0 && bi == 0) continue;
        const double diff = ra * ai - rb * bi;
        stat += diff * diff / (ai + bi);
        ++used;
    }
    const double df = static_cast<double>(used) - 1.0;
    return {stat, df, chi_squared_p_value(stat, df)};
}

/// Half-width of the +-sigmas band for an empirical frequency of a
/// Bernoulli(p) variable over n draws.
inline double binomial_band(double p, std::uint64_t n, double sigmas) {
    return sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

inline bool within_binomial_band(double observed, double expected, std::uint64_t n, double sigmas) {
    return std::abs(observed - expected) <= binomial_band(expected, n, sigmas);
}

/// Unbiased sample variance.
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance needs at least two samples");
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace fiq

#endif  // FIQ_STATS_HPP

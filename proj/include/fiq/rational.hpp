#ifndef FIQ_RATIONAL_HPP
#define FIQ_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fiq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Int rational_den(const Rational& x) { return boost::multiprecision::denominator(x); }

// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on bad input.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    }
}

inline std::string rational_to_string(const Rational& x) {
    if (rational_den(x) == 1) return rational_num(x).str();
    return rational_num(x).str() + "/" + rational_den(x).str();
}

// j-th binary digit after the radix point of x in [0,1), j >= 1.
inline int binary_digit(const Rational& x, std::uint64_t j) {
    Int p = rational_num(x) << j;
    return static_cast<int>((p / rational_den(x)) & 1);
}

inline bool is_dyadic(const Rational& x) {
    Int den = rational_den(x);
    return (den & (den - 1)) == 0;
}

// Number of fractional bits of a dyadic rational (0 for integers).
inline unsigned dyadic_bit_count(const Rational& x) {
    if (!is_dyadic(x)) throw std::invalid_argument("not dyadic");
    unsigned b = 0;
    Int den = rational_den(x);
    while (den > 1) {
        den >>= 1;
        ++b;
    }
    return b;
}

struct ExpansionPeriod {
    std::uint64_t preperiod;  // digits before the cycle starts
    std::uint64_t period;     // cycle length
};

// Eventual period of the binary expansion of x in [0,1), by cycle detection
// on the doubling-map remainder. Intended for moderate denominators.
inline ExpansionPeriod binary_expansion_period(const Rational& x) {
    if (x < 0 || x >= 1) throw std::invalid_argument("expansion requires x in [0,1)");
    const Int den = rational_den(x);
    Int rem = rational_num(x);
    // Remainders are bounded by den, so the orbit closes within den steps.
    std::vector<Int> seen;
    for (;;) {
        for (std::uint64_t i = 0; i < seen.size(); ++i) {
            if (seen[i] == rem) return {i, seen.size() - i};
        }
        seen.push_back(rem);
        rem <<= 1;
        if (rem >= den) rem -= den;
    }
}

}  // namespace fiq

#endif  // FIQ_RATIONAL_HPP

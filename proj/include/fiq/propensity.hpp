#ifndef FIQ_PROPENSITY_HPP
#define FIQ_PROPENSITY_HPP

#include <cmath>
#include <stdexcept>

#include "fiq/rational.hpp"

namespace fiq {

/// Exact rational in [0,1] quantifying a digit's tendency to take value 1.
class Propensity {
public:
    Propensity() : value_(1, 2) {}

    explicit Propensity(Rational value) : value_(std::move(value)) {
        if (value_ < 0 || value_ > 1) {
            throw std::invalid_argument("propensity must lie in [0,1]: " + rational_to_string(value_));
        }
    }

    Propensity(long num, long den) : Propensity(Rational(num, den)) {}

    const Rational& value() const { return value_; }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_certain() const { return is_zero() || is_one(); }
    bool is_half() const { return value_ == Rational(1, 2); }

    Propensity complement() const { return Propensity(Rational(1) - value_); }

    friend bool operator==(const Propensity&, const Propensity&) = default;

private:
    Rational value_;
};

/// H(q) = -q log2 q - (1-q) log2 (1-q), with 0 log2 0 = 0.
inline double binary_entropy(const Rational& q) {
    if (q < 0 || q > 1) throw std::invalid_argument("entropy argument outside [0,1]");
    if (q == 0 || q == 1) return 0.0;
    const double a = q.convert_to<double>();
    const double b = (Rational(1) - q).convert_to<double>();
    return -a * std::log2(a) - b * std::log2(b);
}

inline double binary_entropy(const Propensity& q) { return binary_entropy(q.value()); }

/// I = 1 - H(q), the information carried by one digit of propensity q.
inline double information_of(const Propensity& q) { return 1.0 - binary_entropy(q); }

}  // namespace fiq

#endif  // FIQ_PROPENSITY_HPP

#ifndef FIQ_DOMAINS_HPP
#define FIQ_DOMAINS_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiq/fiq.hpp"
#include "fiq/rational.hpp"

namespace fiq {

class PrecisionExceeded : public std::runtime_error {
public:
    explicit PrecisionExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Common interface over the number-domain representations: a deterministic,
/// repeatable stream of binary digits with an optional precision bound.
class DigitSource {
public:
    virtual ~DigitSource() = default;

    /// j-th binary digit after the radix point, j >= 1.
    virtual int digit_at(std::uint64_t j) const = 0;

    /// Finite digit bound, or nullopt when unbounded.
    virtual std::optional<std::uint64_t> known_precision() const = 0;

    virtual std::string describe() const = 0;
};

/// Finitely many digits with a hard cutoff n. Digits beyond the cutoff do not
/// exist; querying them is an error, not a zero.
class TruncatedReal final : public DigitSource {
public:
    TruncatedReal(std::vector<int> bits, std::uint64_t cutoff) : bits_(std::move(bits)), cutoff_(cutoff) {
        if (cutoff_ == 0) throw std::invalid_argument("cutoff must be positive");
        if (bits_.size() > cutoff_) throw std::invalid_argument("more digits than the cutoff admits");
        for (int b : bits_) {
            if (b != 0 && b != 1) throw std::invalid_argument("digits must be bits");
        }
    }

    int digit_at(std::uint64_t j) const override {
        if (j < 1) throw std::invalid_argument("digit index is 1-based");
        if (j > cutoff_) {
            throw PrecisionExceeded("digit " + std::to_string(j) + " exceeds cutoff " + std::to_string(cutoff_));
        }
        return j <= bits_.size() ? bits_[j - 1] : 0;
    }

    std::optional<std::uint64_t> known_precision() const override { return cutoff_; }

    std::string describe() const override {
        return "truncated:" + bit_string() + ":" + std::to_string(cutoff_);
    }

    const std::vector<int>& bits() const { return bits_; }
    std::uint64_t cutoff() const { return cutoff_; }

    std::string bit_string() const {
        std::string s;
        for (int b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    Rational value() const {
        Int num = 0;
        for (int b : bits_) num = (num << 1) | b;
        return bits_.empty() ? Rational(0) : Rational(num, Int(1) << bits_.size());
    }

private:
    std::vector<int> bits_;
    std::uint64_t cutoff_;
};

/// Exact rational in [0,1); its expansion is eventually periodic.
class RationalQuantity final : public DigitSource {
public:
    explicit RationalQuantity(Rational value) : value_(std::move(value)) {
        if (value_ < 0 || value_ >= 1) throw std::invalid_argument("rational quantity must lie in [0,1)");
    }

    int digit_at(std::uint64_t j) const override {
        if (j < 1) throw std::invalid_argument("digit index is 1-based");
        return binary_digit(value_, j);
    }

    std::optional<std::uint64_t> known_precision() const override { return std::nullopt; }

    std::string describe() const override { return "rational:" + rational_to_string(value_); }

    const Rational& value() const { return value_; }

    ExpansionPeriod expansion_period() const { return binary_expansion_period(value_); }

private:
    Rational value_;
};

/// A total procedure producing verified binary digits.
class DigitProgram {
public:
    virtual ~DigitProgram() = default;
    virtual std::string name() const = 0;
    /// First `count` fractional digits; must be exact (not merely approximate).
    virtual std::vector<int> digits(std::uint64_t count) const = 0;
};

namespace detail {

// atan(1/x) * 2^bits by the truncated Gregory series; error a few ulps times
// the term count, absorbed by the caller's guard bits.
inline Int atan_inv_fixed(std::uint64_t x, std::uint64_t bits) {
    Int term = (Int(1) << bits) / x;
    Int sum = term;
    const std::uint64_t x2 = x * x;
    bool subtract = true;
    for (std::uint64_t n = 3; term != 0; n += 2, subtract = !subtract) {
        term /= x2;
        if (term == 0) break;
        const Int contrib = term / n;
        sum += subtract ? -contrib : contrib;
    }
    return sum;
}

// pi * 2^bits via Machin: pi = 16 atan(1/5) - 4 atan(1/239).
inline Int pi_fixed(std::uint64_t bits) {
    return 16 * atan_inv_fixed(5, bits) - 4 * atan_inv_fixed(239, bits);
}

}  // namespace detail

/// Fractional binary digits of sqrt(2) - 1 = 0.0110101000001...
class Sqrt2Minus1Program final : public DigitProgram {
public:
    std::string name() const override { return "sqrt2_minus_1"; }

    std::vector<int> digits(std::uint64_t count) const override {
        // floor(sqrt(2) * 2^count); sqrt(2) is irrational so no digit ever
        // sits on an integer boundary.
        const Int root = boost::multiprecision::sqrt(Int(2) << (2 * count));
        std::vector<int> out(count);
        for (std::uint64_t j = 0; j < count; ++j) {
            out[count - 1 - j] = static_cast<int>((root >> j) & 1);
        }
        return out;
    }
};

/// Fractional binary digits of pi - 3 = 0.0010010000111111...
class PiMinus3Program final : public DigitProgram {
public:
    std::string name() const override { return "pi_minus_3"; }

    std::vector<int> digits(std::uint64_t count) const override {
        // Compute at two precisions and accept only digits both agree on;
        // retry with more guard bits on the (measure-zero-ish) boundary runs.
        for (std::uint64_t guard = 64;; guard *= 2) {
            const Int lo = detail::pi_fixed(count + guard) >> guard;
            const Int hi = detail::pi_fixed(count + 2 * guard) >> (2 * guard);
            if (lo != hi) continue;
            std::vector<int> out(count);
            for (std::uint64_t j = 0; j < count; ++j) {
                out[count - 1 - j] = static_cast<int>((lo >> j) & 1);
            }
            return out;  // integer part (11b) dropped by taking only `count` low bits
        }
    }
};

/// Rational wrapper, so exact rationals can also act as digit programs.
class RationalProgram final : public DigitProgram {
public:
    explicit RationalProgram(Rational value) : value_(std::move(value)) {
        if (value_ < 0 || value_ >= 1) throw std::invalid_argument("rational program value must lie in [0,1)");
    }

    std::string name() const override { return "rational:" + rational_to_string(value_); }

    std::vector<int> digits(std::uint64_t count) const override {
        std::vector<int> out(count);
        for (std::uint64_t j = 1; j <= count; ++j) out[j - 1] = binary_digit(value_, j);
        return out;
    }

private:
    Rational value_;
};

/// A computable real: a vetted digit program plus a write-once memo.
/// Concurrent digit_at calls return identical values.
class ComputableReal final : public DigitSource {
public:
    explicit ComputableReal(std::shared_ptr<const DigitProgram> program) : program_(std::move(program)) {
        if (!program_) throw std::invalid_argument("null digit program");
    }

    int digit_at(std::uint64_t j) const override {
        if (j < 1) throw std::invalid_argument("digit index is 1-based");
        std::lock_guard<std::mutex> lock(mutex_);
        if (memo_.size() < j) {
            std::vector<int> fresh = program_->digits(std::max<std::uint64_t>(j, memo_.size() * 2));
            // A previously returned digit never changes.
            for (std::size_t i = 0; i < memo_.size(); ++i) {
                if (fresh[i] != memo_[i]) throw std::logic_error("digit program is not stable");
            }
            memo_ = std::move(fresh);
        }
        return memo_[j - 1];
    }

    std::optional<std::uint64_t> known_precision() const override { return std::nullopt; }

    std::string describe() const override { return "computable:" + program_->name(); }

private:
    std::shared_ptr<const DigitProgram> program_;
    mutable std::mutex mutex_;
    mutable std::vector<int> memo_;
};

/// Named generator registry: "computable:sqrt2_minus_1", "computable:pi_minus_3",
/// "computable:rational:p/q".
inline std::unique_ptr<ComputableReal> make_computable(const std::string& name) {
    if (name == "sqrt2_minus_1") {
        return std::make_unique<ComputableReal>(std::make_shared<Sqrt2Minus1Program>());
    }
    if (name == "pi_minus_3") {
        return std::make_unique<ComputableReal>(std::make_shared<PiMinus3Program>());
    }
    if (name.rfind("rational:", 0) == 0) {
        return std::make_unique<ComputableReal>(
            std::make_shared<RationalProgram>(parse_rational(name.substr(9))));
    }
    throw std::invalid_argument("unknown computable generator: " + name);
}

/// Freezes the first `take` digits of a source into a FIQ prefix; the rest of
/// the quantity is left maximally indeterminate.
inline Fiq to_fiq(const DigitSource& src, std::uint64_t take) {
    if (auto bound = src.known_precision(); bound && take > *bound) {
        throw PrecisionExceeded("requested " + std::to_string(take) + " digits, source holds " +
                                std::to_string(*bound));
    }
    std::vector<int> prefix(take);
    for (std::uint64_t j = 1; j <= take; ++j) prefix[j - 1] = src.digit_at(j);
    return Fiq(std::move(prefix), {});
}

/// One closed-form evolution applied to a rational input, with its
/// rationality verdict. Irrationality of sqrt(2) and pi is catalog knowledge,
/// not proven at runtime.
struct NonClosureEntry {
    std::string operation;
    std::string result;           // symbolic description
    bool rational;
    std::optional<Rational> rational_value;  // set when the result stays rational
};

struct NonClosureReport {
    Rational input;
    std::vector<NonClosureEntry> entries;
};

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    const Int r = boost::multiprecision::sqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline NonClosureReport non_closure_demo(const RationalQuantity& ic) {
    const Rational& x = ic.value();
    NonClosureReport report;
    report.input = x;

    // Diagonal of a square with edge x: x * sqrt(2).
    report.entries.push_back({"unit_square_diagonal", rational_to_string(x) + "*sqrt(2)", x == 0,
                              x == 0 ? std::optional<Rational>(Rational(0)) : std::nullopt});

    // Circumference of a circle with diameter x: x * pi.
    report.entries.push_back({"circle_circumference", rational_to_string(x) + "*pi", x == 0,
                              x == 0 ? std::optional<Rational>(Rational(0)) : std::nullopt});

    // Squaring: rationals are closed under multiplication.
    const Rational squared = x * x;
    report.entries.push_back({"squaring", rational_to_string(squared), true, squared});

    // Square root: rational iff numerator and denominator are perfect squares.
    Int rn, rd;
    const bool root_rational = is_perfect_square(rational_num(x), &rn) && is_perfect_square(rational_den(x), &rd);
    report.entries.push_back({"square_root",
                              root_rational ? rational_to_string(Rational(rn, rd))
                                            : "sqrt(" + rational_to_string(x) + ")",
                              root_rational,
                              root_rational ? std::optional<Rational>(Rational(rn, rd)) : std::nullopt});
    return report;
}

/// Parses the generator-registry grammar:
///   "rational:p/q" | "truncated:BITS:n" | "computable:NAME".
inline std::unique_ptr<DigitSource> make_source(const std::string& spec) {
    if (spec.rfind("rational:", 0) == 0) {
        return std::make_unique<RationalQuantity>(parse_rational(spec.substr(9)));
    }
    if (spec.rfind("truncated:", 0) == 0) {
        const std::string rest = spec.substr(10);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("truncated spec needs bits and cutoff");
        std::vector<int> bits;
        for (char ch : rest.substr(0, colon)) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("truncated bits must be 0/1");
            bits.push_back(ch - '0');
        }
        const std::uint64_t cutoff = std::stoull(rest.substr(colon + 1));
        return std::make_unique<TruncatedReal>(std::move(bits), cutoff);
    }
    if (spec.rfind("computable:", 0) == 0) {
        return make_computable(spec.substr(11));
    }
    throw std::invalid_argument("unknown quantity domain: " + spec);
}

}  // namespace fiq

#endif  // FIQ_DOMAINS_HPP

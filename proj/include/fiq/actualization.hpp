#ifndef FIQ_ACTUALIZATION_HPP
#define FIQ_ACTUALIZATION_HPP

#include <cstdint>
#include <string>

#include "fiq/fiq.hpp"
#include "fiq/random.hpp"

namespace fiq {

/// Samples the next indeterminate digit (window front, or the 1/2 tail) and
/// commits it to the prefix. N increases by exactly one; determined digits
/// are never touched.
inline int actualize_next(Fiq& f, RandomnessSource& rng) {
    const int bit = sample_digit(f.next_propensity().value(), rng);
    f.actualize_front(bit);
    return bit;
}

/// Mechanism 1: digits actualize spontaneously as time passes, at a
/// configurable expected rate per step. The fractional part of the rate is
/// carried deterministically between steps.
class SpontaneousEngine {
public:
    explicit SpontaneousEngine(Rational rate) : rate_(std::move(rate)) {
        if (rate_ < 0) throw std::invalid_argument("actualization rate must be nonnegative");
    }

    const Rational& rate() const { return rate_; }
    const Rational& carry() const { return carry_; }

    /// One time step: actualizes floor(rate + carry) digits and keeps the
    /// remainder. Over T steps the total count is within one digit of rate*T.
    std::uint64_t step(Fiq& f, RandomnessSource& rng) {
        carry_ += rate_;
        const Int whole = rational_num(carry_) / rational_den(carry_);
        carry_ -= Rational(whole);
        const auto count = whole.convert_to<std::uint64_t>();
        for (std::uint64_t i = 0; i < count; ++i) actualize_next(f, rng);
        f.advance_clock();
        return count;
    }

private:
    Rational rate_;
    Rational carry_ = 0;
};

/// Mechanism 2: a higher level demands the k most significant digits, so any
/// of them still indeterminate must actualize. Re-measuring at the same or a
/// coarser resolution is a pure read.
class MeasurementEngine {
public:
    explicit MeasurementEngine(std::uint64_t resolution) : resolution_(resolution) {
        if (resolution_ == 0) throw std::invalid_argument("resolution must be positive");
    }

    std::uint64_t resolution() const { return resolution_; }

    std::string measure(Fiq& f, RandomnessSource& rng) const {
        while (f.determined_count() < resolution_) actualize_next(f, rng);
        std::string reading;
        reading.reserve(resolution_);
        for (std::uint64_t j = 0; j < resolution_; ++j) reading.push_back(f.prefix()[j] ? '1' : '0');
        return reading;
    }

private:
    std::uint64_t resolution_;
};

inline std::string measure(Fiq& f, std::uint64_t resolution, RandomnessSource& rng) {
    return MeasurementEngine(resolution).measure(f, rng);
}

}  // namespace fiq

#endif  // FIQ_ACTUALIZATION_HPP

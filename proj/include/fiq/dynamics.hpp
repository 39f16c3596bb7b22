#ifndef FIQ_DYNAMICS_HPP
#define FIQ_DYNAMICS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fiq/actualization.hpp"
#include "fiq/domains.hpp"
#include "fiq/fiq.hpp"
#include "fiq/random.hpp"

namespace fiq {

/// Chaotic digit-shift dynamics: x -> (2^s * x) mod 1 per step. The s most
/// significant digits are emitted as observable output each step.
struct ShiftMap {
    std::uint64_t s;

    explicit ShiftMap(std::uint64_t shift) : s(shift) {
        if (s == 0) throw std::invalid_argument("shift must be positive");
    }
};

/// Integrable comparison dynamics: x -> (x + alpha) mod 1, alpha dyadic.
struct RotationMap {
    Rational alpha;

    explicit RotationMap(Rational increment) : alpha(std::move(increment)) {
        if (alpha < 0 || alpha >= 1) throw std::invalid_argument("rotation increment must lie in [0,1)");
        if (!is_dyadic(alpha)) {
            throw std::invalid_argument("non-dyadic rotation increments are not supported");
        }
    }

    unsigned bit_count() const { return dyadic_bit_count(alpha); }
};

// ---------------------------------------------------------------------------
// Exact reference evolution (the deterministic, infinite-precision picture).

inline std::string shift_step_exact(Rational& x, std::uint64_t s) {
    Rational scaled = x * Rational(Int(1) << s);
    const Int whole = rational_num(scaled) / rational_den(scaled);
    x = scaled - Rational(whole);
    std::string emitted(s, '0');
    for (std::uint64_t j = 0; j < s; ++j) {
        if (boost::multiprecision::bit_test(whole, static_cast<unsigned>(s - 1 - j))) emitted[j] = '1';
    }
    return emitted;
}

inline void rotation_step_exact(Rational& x, const Rational& alpha) {
    x += alpha;
    if (x >= 1) x -= 1;
}

struct ExactTrajectory {
    Rational value;
    std::string emitted;
};

inline ExactTrajectory evolve_exact(Rational x, const ShiftMap& map, std::uint64_t steps) {
    ExactTrajectory out{std::move(x), {}};
    for (std::uint64_t t = 0; t < steps; ++t) out.emitted += shift_step_exact(out.value, map.s);
    return out;
}

inline ExactTrajectory evolve_exact(Rational x, const RotationMap& map, std::uint64_t steps) {
    ExactTrajectory out{std::move(x), {}};
    for (std::uint64_t t = 0; t < steps; ++t) rotation_step_exact(out.value, map.alpha);
    return out;
}

struct TruncatedTrajectory {
    TruncatedReal value;
    std::string emitted;
};

/// Shift evolution of a truncated real consumes its stored digits; it fails
/// once the shift would need digits beyond the representation.
inline TruncatedTrajectory evolve_exact(const TruncatedReal& x, const ShiftMap& map, std::uint64_t steps) {
    std::vector<int> bits = x.bits();
    std::string emitted;
    for (std::uint64_t t = 0; t < steps; ++t) {
        if (bits.size() < map.s) {
            throw PrecisionExceeded("shift exhausted the truncated representation at step " +
                                    std::to_string(t + 1));
        }
        for (std::uint64_t j = 0; j < map.s; ++j) emitted.push_back(bits[j] ? '1' : '0');
        bits.erase(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(map.s));
    }
    return {TruncatedReal(std::move(bits), x.cutoff()), std::move(emitted)};
}

// ---------------------------------------------------------------------------
// FIQ evolution.

/// One shift step: the s leading digits become observable, so any of them
/// still indeterminate actualize first; then all digit positions move up by s.
inline std::string shift_step_fiq(Fiq& f, const ShiftMap& map, RandomnessSource& rng) {
    while (f.determined_count() < map.s) actualize_next(f, rng);
    std::string emitted;
    emitted.reserve(map.s);
    for (std::uint64_t j = 0; j < map.s; ++j) emitted.push_back(f.prefix()[j] ? '1' : '0');
    f.drop_leading(map.s);
    f.advance_clock();
    return emitted;
}

inline std::string evolve_fiq(Fiq& f, const ShiftMap& map, std::uint64_t steps, RandomnessSource& rng) {
    std::string emitted;
    emitted.reserve(map.s * steps);
    for (std::uint64_t t = 0; t < steps; ++t) emitted += shift_step_fiq(f, map, rng);
    return emitted;
}

/// One rotation step on a FIQ. The increment is added digit-wise with exact
/// carry bookkeeping: the carry arriving from indeterminate depths is itself
/// a Bernoulli variable, so each digit's post-step marginal propensity is
/// computed exactly. Digits whose value would depend on an unactualized carry
/// are demoted from the prefix into the window; with N(t) >= bits(alpha) no
/// carry ambiguity arises and N is preserved.
inline void rotation_step_fiq(Fiq& f, const RotationMap& map) {
    const unsigned b = map.bit_count();
    if (b == 0) {  // alpha == 0
        f.advance_clock();
        return;
    }
    const std::uint64_t n = f.determined_count();
    const std::uint64_t m = f.window_end();
    const std::uint64_t depth = std::max<std::uint64_t>(m, b);

    std::vector<Rational> q(depth);
    for (std::uint64_t i = 0; i < depth; ++i) {
        if (i < n) {
            q[i] = f.prefix()[i];
        } else if (i < m) {
            q[i] = f.window()[i - n].value();
        } else {
            q[i] = Rational(1, 2);
        }
    }
    std::vector<int> a(depth, 0);
    for (std::uint64_t j = 1; j <= b; ++j) a[j - 1] = binary_digit(map.alpha, j);

    // Walk from the deepest digit toward the most significant one, tracking
    // the probability that a carry enters the current position. Beyond the
    // increment's last bit nothing is added, so the carry starts at zero and
    // the digits there keep their propensities.
    std::vector<Rational> sum(depth);
    Rational carry = 0;
    for (std::uint64_t idx = depth; idx-- > 0;) {
        const Rational flip = a[idx] ? Rational(1) - q[idx] : q[idx];  // P(x xor a = 1)
        sum[idx] = flip * (Rational(1) - carry) + (Rational(1) - flip) * carry;
        carry = a[idx] ? q[idx] + (Rational(1) - q[idx]) * carry : q[idx] * carry;
    }
    // The carry out of the most significant digit is dropped: arithmetic mod 1.

    std::vector<int> prefix;
    std::size_t i = 0;
    for (; i < depth && (sum[i] == 0 || sum[i] == 1); ++i) prefix.push_back(sum[i] == 1 ? 1 : 0);
    std::size_t last = depth;
    while (last > i && sum[last - 1] == Rational(1, 2)) --last;  // fold back into the tail
    std::vector<Propensity> window;
    for (std::size_t k = i; k < last; ++k) window.emplace_back(sum[k]);

    f.replace_digits(std::move(prefix), std::move(window));
    f.advance_clock();
}

inline void evolve_fiq_rotation(Fiq& f, const RotationMap& map, std::uint64_t steps) {
    for (std::uint64_t t = 0; t < steps; ++t) rotation_step_fiq(f, map);
}

}  // namespace fiq

#endif  // FIQ_DYNAMICS_HPP

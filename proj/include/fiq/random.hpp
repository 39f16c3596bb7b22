#ifndef FIQ_RANDOM_HPP
#define FIQ_RANDOM_HPP

#include <cstdint>

#include "fiq/rational.hpp"

namespace fiq {

/// Deterministic counter-based bit stream keyed by (seed, stream_id).
/// Identical keys and call sequences reproduce identical draws; distinct
/// stream ids give statistically independent streams (SplitMix64 mixing).
class RandomnessSource {
public:
    RandomnessSource(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed),
          stream_(stream_id),
          base_(mix(seed + GOLDEN * (mix(stream_id + GOLDEN) | 1))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() { return mix(base_ + GOLDEN * ++counter_); }

    int next_bit() {
        if (bits_left_ == 0) {
            buffer_ = next_u64();
            bits_left_ = 64;
        }
        const int bit = static_cast<int>(buffer_ & 1);
        buffer_ >>= 1;
        --bits_left_;
        return bit;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection from the top to avoid modulo bias.
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    std::uint64_t buffer_ = 0;
    int bits_left_ = 0;
};

/// Exact Bernoulli(q) draw for rational q: a lazily extended uniform bit
/// stream is compared digit-wise against q's binary expansion, so no
/// floating-point rounding enters the comparison. Returns 1 iff the uniform
/// variate falls below q. Works with any source exposing next_bit().
template <typename BitSource>
int sample_digit(const Rational& q, BitSource& rng) {
    if (q < 0 || q > 1) throw std::invalid_argument("propensity outside [0,1]");
    if (q == 0) return 0;
    if (q == 1) return 1;
    if (q == Rational(1, 2)) return rng.next_bit();
    Int rem = rational_num(q);
    const Int& den = rational_den(q);
    for (;;) {
        rem <<= 1;
        int qd = 0;
        if (rem >= den) {
            qd = 1;
            rem -= den;
        }
        const int ud = rng.next_bit();
        if (ud < qd) return 1;  // u < q decided at this digit
        if (ud > qd) return 0;  // u > q decided at this digit
    }
}

}  // namespace fiq

#endif  // FIQ_RANDOM_HPP

#ifndef FIQ_FIQ_HPP
#define FIQ_FIQ_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fiq/propensity.hpp"
#include "fiq/rational.hpp"

namespace fiq {

/// Raw candidate structure, possibly invalid. `validate` inspects it without
/// aborting; `Fiq::from_candidate` turns it into a checked value.
struct FiqCandidate {
    std::vector<int> prefix;        // intended bits, each should be 0 or 1
    std::vector<Rational> window;   // intended propensities, each should be in (0,1)
    std::uint64_t clock = 0;
};

struct ValidityReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidityReport validate(const FiqCandidate& c) {
    ValidityReport report;
    for (std::size_t i = 0; i < c.prefix.size(); ++i) {
        if (c.prefix[i] != 0 && c.prefix[i] != 1) {
            report.violations.push_back("prefix digit " + std::to_string(i + 1) + " is not a bit");
        }
    }
    for (std::size_t i = 0; i < c.window.size(); ++i) {
        const Rational& q = c.window[i];
        if (q < 0 || q > 1) {
            report.violations.push_back("window propensity " + std::to_string(i + 1) + " outside [0,1]");
        } else if (q == 0 || q == 1) {
            report.violations.push_back(
                "window must exclude certain propensities (entry " + std::to_string(i + 1) + ")");
        }
    }
    // Finiteness of information holds structurally: the window is a finite
    // list and the implicit tail contributes zero.
    return report;
}

/// A finite-information quantity: determined binary prefix, windowed
/// propensities strictly in (0,1), and an implicit all-1/2 tail. Interpreted
/// as a binary expansion in [0,1).
class Fiq {
public:
    Fiq() = default;

    Fiq(std::vector<int> prefix, std::vector<Propensity> window, std::uint64_t clock = 0)
        : prefix_(std::move(prefix)), window_(std::move(window)), clock_(clock) {
        for (int b : prefix_) {
            if (b != 0 && b != 1) throw std::invalid_argument("prefix digits must be bits");
        }
        for (const Propensity& q : window_) {
            if (q.is_certain()) {
                throw std::invalid_argument("window must exclude certain propensities");
            }
        }
    }

    static Fiq from_candidate(const FiqCandidate& c) {
        ValidityReport report = validate(c);
        if (!report.ok()) throw std::invalid_argument("invalid FIQ candidate: " + report.violations.front());
        std::vector<Propensity> window;
        window.reserve(c.window.size());
        for (const Rational& q : c.window) window.emplace_back(q);
        return Fiq(c.prefix, std::move(window), c.clock);
    }

    const std::vector<int>& prefix() const { return prefix_; }
    const std::vector<Propensity>& window() const { return window_; }
    std::uint64_t clock() const { return clock_; }

    /// N(t): count of determined most-significant digits.
    std::uint64_t determined_count() const { return prefix_.size(); }
    /// M(t): depth beyond which every propensity is exactly 1/2.
    std::uint64_t window_end() const { return prefix_.size() + window_.size(); }

    std::string prefix_string() const {
        std::string s;
        s.reserve(prefix_.size());
        for (int b : prefix_) s.push_back(b ? '1' : '0');
        return s;
    }

    /// Value of the determined prefix as a rational in [0,1).
    Rational prefix_value() const {
        Int num = 0;
        for (int b : prefix_) num = (num << 1) | b;
        return prefix_.empty() ? Rational(0) : Rational(num, Int(1) << prefix_.size());
    }

    /// Propensity governing the next digit to actualize (window front, or the
    /// tail's 1/2 when the window is empty).
    Propensity next_propensity() const {
        return window_.empty() ? Propensity(1, 2) : window_.front();
    }

    /// Commits the next indeterminate digit to `bit`, consuming the window
    /// front if one was stored. N increases by exactly one.
    void actualize_front(int bit) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("actualized digit must be a bit");
        if (!window_.empty()) window_.erase(window_.begin());
        prefix_.push_back(bit);
    }

    /// Drops the s most significant digits (they have been emitted as
    /// observables). Requires the first s digits to be determined.
    void drop_leading(std::uint64_t s) {
        if (s > prefix_.size()) throw std::logic_error("cannot drop undetermined leading digits");
        prefix_.erase(prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(s));
    }

    void advance_clock(std::uint64_t steps = 1) { clock_ += steps; }

    /// Replaces digit content wholesale (used by dynamics that rewrite the
    /// expansion, e.g. rotation); the clock is kept.
    void replace_digits(std::vector<int> prefix, std::vector<Propensity> window) {
        Fiq checked(std::move(prefix), std::move(window), clock_);
        prefix_ = std::move(checked.prefix_);
        window_ = std::move(checked.window_);
    }

private:
    std::vector<int> prefix_;
    std::vector<Propensity> window_;
    std::uint64_t clock_ = 0;
};

inline ValidityReport validate(const Fiq&) {
    // Construction already enforces every structural invariant.
    return {};
}

/// Checks a time-ordered history of snapshots for irreversibility: the clock
/// never runs backwards and no determined digit is ever revoked. Snapshots are
/// compared in the frame of the realized digit stream, so callers evolving
/// under a shift should pass (emitted ++ prefix) composites instead.
inline ValidityReport validate_history(const std::vector<Fiq>& history) {
    ValidityReport report;
    for (std::size_t i = 1; i < history.size(); ++i) {
        const Fiq& a = history[i - 1];
        const Fiq& b = history[i];
        if (b.clock() < a.clock()) {
            report.violations.push_back("clock decreased at snapshot " + std::to_string(i));
        }
        if (b.determined_count() < a.determined_count()) {
            report.violations.push_back("determined count decreased at snapshot " + std::to_string(i));
        } else if (!std::equal(a.prefix().begin(), a.prefix().end(), b.prefix().begin())) {
            report.violations.push_back("determined digits changed at snapshot " + std::to_string(i));
        }
    }
    return report;
}

struct DigitStatus {
    enum class Kind { Determined, Windowed, RandomTail };
    Kind kind;
    int bit = -1;                      // set when Determined
    Propensity propensity{1, 2};       // set when Windowed; 1/2 for the tail

    bool determined() const { return kind == Kind::Determined; }
    bool windowed() const { return kind == Kind::Windowed; }
    bool random_tail() const { return kind == Kind::RandomTail; }
};

/// Status of digit j (1-based): determined, windowed, or free random tail.
inline DigitStatus digit_status(const Fiq& f, std::uint64_t j) {
    if (j < 1) throw std::invalid_argument("digit index is 1-based");
    if (j <= f.determined_count()) {
        const int bit = f.prefix()[j - 1];
        return {DigitStatus::Kind::Determined, bit, Propensity(Rational(bit))};
    }
    if (j <= f.window_end()) {
        return {DigitStatus::Kind::Windowed, -1, f.window()[j - 1 - f.determined_count()]};
    }
    return {DigitStatus::Kind::RandomTail, -1, Propensity(1, 2)};
}

/// Total information: N(t) + sum over the window of 1 - H(q). The tail
/// contributes exactly zero.
inline double information_content(const Fiq& f) {
    double total = static_cast<double>(f.determined_count());
    for (const Propensity& q : f.window()) total += information_of(q);
    return total;
}

inline nlohmann::json to_json(const Fiq& f) {
    nlohmann::json window = nlohmann::json::array();
    for (const Propensity& q : f.window()) {
        window.push_back({rational_num(q.value()).str(), rational_den(q.value()).str()});
    }
    return {{"prefix", f.prefix_string()}, {"window", window}, {"clock", f.clock()}};
}

inline FiqCandidate candidate_from_json(const nlohmann::json& j) {
    FiqCandidate c;
    const std::string prefix = j.at("prefix").get<std::string>();
    for (char ch : prefix) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("prefix must be a bit string");
        c.prefix.push_back(ch - '0');
    }
    for (const auto& entry : j.at("window")) {
        Int num(entry.at(0).get<std::string>());
        Int den(entry.at(1).get<std::string>());
        if (den == 0) throw std::invalid_argument("zero denominator in window");
        c.window.emplace_back(num, den);
    }
    c.clock = j.value("clock", std::uint64_t{0});
    return c;
}

inline Fiq fiq_from_json(const nlohmann::json& j) { return Fiq::from_candidate(candidate_from_json(j)); }

}  // namespace fiq

#endif  // FIQ_FIQ_HPP

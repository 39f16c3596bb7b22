#ifndef FIQ_QUANTITY_SPEC_HPP
#define FIQ_QUANTITY_SPEC_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fiq/domains.hpp"
#include "fiq/dynamics.hpp"
#include "fiq/fiq.hpp"

namespace fiq {

// Quantity spec mini-grammar (colon/semicolon-delimited, rationals as "p/q"):
//
//   quantity  := fiq | domain
//   fiq       := "fiq:" [field ("," field)*]
//   field     := "prefix=" BITS | "window=" rational (";" rational)* | "clock=" INT
//   domain    := "rational:" rational
//              | "truncated:" BITS ":" INT
//              | "computable:" name
//   rational  := INT | INT "/" INT

inline Fiq parse_fiq_spec(const std::string& body) {
    std::vector<int> prefix;
    std::vector<Propensity> window;
    std::uint64_t clock = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = body.find(',', pos);
        if (end == std::string::npos) end = body.size();
        const std::string field = body.substr(pos, end - pos);
        pos = end + 1;
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("fiq field needs '=': " + field);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "prefix") {
            for (char ch : value) {
                if (ch != '0' && ch != '1') throw std::invalid_argument("prefix must be a bit string");
                prefix.push_back(ch - '0');
            }
        } else if (key == "window") {
            std::size_t p = 0;
            while (p <= value.size()) {
                std::size_t e = value.find(';', p);
                if (e == std::string::npos) e = value.size();
                if (e > p) window.emplace_back(parse_rational(value.substr(p, e - p)));
                p = e + 1;
            }
        } else if (key == "clock") {
            clock = std::stoull(value);
        } else {
            throw std::invalid_argument("unknown fiq field: " + key);
        }
    }
    return Fiq(std::move(prefix), std::move(window), clock);
}

using Quantity = std::variant<Fiq, std::unique_ptr<DigitSource>>;

inline Quantity parse_quantity_spec(const std::string& spec) {
    if (spec.rfind("fiq:", 0) == 0) return parse_fiq_spec(spec.substr(4));
    if (spec == "fiq") return Fiq{};
    return make_source(spec);
}

using MapSpec = std::variant<ShiftMap, RotationMap>;

/// "shift:s" or "rotation:p/q".
inline MapSpec parse_map_spec(const std::string& spec) {
    if (spec.rfind("shift:", 0) == 0) return ShiftMap(std::stoull(spec.substr(6)));
    if (spec.rfind("rotation:", 0) == 0) return RotationMap(parse_rational(spec.substr(9)));
    throw std::invalid_argument("unknown map spec: " + spec);
}

}  // namespace fiq

#endif  // FIQ_QUANTITY_SPEC_HPP

#ifndef FIQ_VERSION_HPP
#define FIQ_VERSION_HPP

namespace fiq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fiq

#endif  // FIQ_VERSION_HPP

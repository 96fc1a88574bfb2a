#ifndef QUADSPIN_VERSION_HPP
#define QUADSPIN_VERSION_HPP

namespace quadspin {

inline constexpr const char* kToolName = "quadspin";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace quadspin

#endif

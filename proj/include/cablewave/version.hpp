#ifndef CABLEWAVE_VERSION_HPP
#define CABLEWAVE_VERSION_HPP

namespace cablewave {

inline constexpr const char* artifact_name = "cablewave";
inline constexpr const char* artifact_version = "0.1.0";

}  // namespace cablewave

#endif

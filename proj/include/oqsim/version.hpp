#pragma once

namespace oqsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oqsim

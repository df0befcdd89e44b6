#pragma once

namespace taskvec {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace taskvec

#pragma once

namespace germscope {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace germscope

#pragma once

namespace mepack {

inline constexpr const char* version = "0.1.0";

}  // namespace mepack

#pragma once

namespace ddna {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ddna

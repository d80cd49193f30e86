#pragma once

namespace ceps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ceps

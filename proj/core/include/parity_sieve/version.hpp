#pragma once

namespace parity_sieve {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace parity_sieve

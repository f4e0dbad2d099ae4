#pragma once

#include <cstdint>
#include <limits>

#include "stabkit/diagnostics.hpp"

namespace stabkit {

// Enumeration is exponential; every search takes an explicit cap on candidate
// states and fails loudly instead of running away.
struct Cap {
  std::uint64_t limit = 1'000'000;  // global default: 10^6 candidate states

  void require(std::uint64_t estimate) const {
    if (estimate > limit) throw CapExceeded(estimate, limit);
  }
};

// Saturating product for candidate-count estimates.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace stabkit

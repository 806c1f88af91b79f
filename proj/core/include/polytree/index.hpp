#pragma once

#include <cstddef>
#include <vector>

namespace polytree {

// Mixed-radix flat indexing, first digit most significant. Used for the
// canonical orders of product / tensor / substitution positions and
// directions.

inline std::size_t mixed_radix_size(const std::vector<std::size_t>& radices) {
  std::size_t n = 1;
  for (std::size_t r : radices) n *= r;
  return n;
}

inline std::size_t mixed_radix_encode(const std::vector<std::size_t>& radices,
                                      const std::vector<std::size_t>& digits) {
  std::size_t v = 0;
  for (std::size_t k = 0; k < radices.size(); ++k) v = v * radices[k] + digits[k];
  return v;
}

inline std::vector<std::size_t> mixed_radix_decode(const std::vector<std::size_t>& radices,
                                                   std::size_t value) {
  std::vector<std::size_t> digits(radices.size(), 0);
  for (std::size_t k = radices.size(); k-- > 0;) {
    digits[k] = radices[k] ? value % radices[k] : 0;
    value = radices[k] ? value / radices[k] : value;
  }
  return digits;
}

/// Advance a mixed-radix odometer (last digit fastest). Returns false once
/// all combinations have been visited.
inline bool mixed_radix_next(const std::vector<std::size_t>& radices,
                             std::vector<std::size_t>& digits) {
  for (std::size_t k = radices.size(); k-- > 0;) {
    if (++digits[k] < radices[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace polytree

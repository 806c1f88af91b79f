#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <limits>

namespace polytree {

/// Exact arbitrary-precision count. Enumeration sizes grow doubly
/// exponentially with depth, so counting never uses machine integers.
using Count = boost::multiprecision::cpp_int;

/// base^exp with the convention 0^0 = 1 (the empty product).
inline Count pow_count(const Count& base, std::size_t exp) {
  Count r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

inline bool fits_size_t(const Count& c) {
  return c >= 0 && c <= Count(std::numeric_limits<std::size_t>::max());
}

inline std::size_t to_size_t(const Count& c) {
  return static_cast<std::size_t>(c);
}

}  // namespace polytree

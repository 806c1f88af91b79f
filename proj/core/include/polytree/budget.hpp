#pragma once

#include "polytree/count.hpp"
#include "polytree/errors.hpp"

#include <cstdint>
#include <string>

namespace polytree {

/// Size guard for combinatorial constructions. Operations that can blow up
/// (enumeration, products, hom towers) check their closed-form size against
/// the limit first and refuse with the exact count rather than thrash.
struct Budget {
  std::uint64_t limit = 1'000'000;

  void check(const std::string& context, const Count& size) const {
    if (size > Count(limit)) {
      throw BudgetError(context, size.str(), limit);
    }
  }
};

}  // namespace polytree

#pragma once

#include "polytree/count.hpp"
#include "polytree/poly.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace polytree {

/// A coalgebra for a fixed polynomial: each state picks a position and a
/// successor state per direction of that position.
struct SetCoalgebra {
  PolyCode carrier;                                 // the polynomial p
  std::size_t states = 0;
  std::vector<std::size_t> position;                // per state
  std::vector<std::vector<std::size_t>> successor;  // per state, per direction

  friend bool operator==(const SetCoalgebra&, const SetCoalgebra&) = default;
};

void validate(const SetCoalgebra& c);

/// Number of depth-n behavior prefixes of p: the position count of the
/// n-th stage of the cofree tower over p.
Count cofree_count(const PolyCode& p, std::size_t depth);

/// Depth-bounded behavior tree. Depth 0 carries no data; at positive depth
/// a node is a position plus one child per direction.
struct BehaviorTrunc {
  std::size_t depth = 0;
  std::optional<std::size_t> position;   // nullopt iff depth == 0
  std::vector<BehaviorTrunc> children;   // per direction of position

  friend bool operator==(const BehaviorTrunc&, const BehaviorTrunc&) = default;
};

/// The depth-n truncation of the behavior of a state.
BehaviorTrunc unfold_behavior(const SetCoalgebra& c, std::size_t state, std::size_t depth);

}  // namespace polytree

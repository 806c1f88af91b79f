#include "polytree/coalgebra.hpp"

#include "polytree/errors.hpp"

#include <string>

namespace polytree {

void validate(const SetCoalgebra& c) {
  validate(c.carrier);
  if (c.position.size() != c.states || c.successor.size() != c.states) {
    throw ValidateError("coalgebra tables must have one entry per state");
  }
  for (std::size_t s = 0; s < c.states; ++s) {
    if (c.position[s] >= c.carrier.size()) {
      throw ValidateError("state position out of range", "position[" + std::to_string(s) + "]");
    }
    if (c.successor[s].size() != c.carrier.dirs(c.position[s])) {
      throw ValidateError("successor row must cover the position's directions",
                          "successor[" + std::to_string(s) + "]");
    }
    for (std::size_t d = 0; d < c.successor[s].size(); ++d) {
      if (c.successor[s][d] >= c.states) {
        throw ValidateError("successor state out of range",
                            "successor[" + std::to_string(s) + "][" + std::to_string(d) + "]");
      }
    }
  }
}

Count cofree_count(const PolyCode& p, std::size_t depth) {
  Count c = 1;  // the base stage has a single position
  for (std::size_t n = 0; n < depth; ++n) {
    Count next = 0;
    for (std::size_t i = 0; i < p.size(); ++i) next += pow_count(c, p.dirs(i));
    c = next;
  }
  return c;
}

BehaviorTrunc unfold_behavior(const SetCoalgebra& c, std::size_t state, std::size_t depth) {
  if (state >= c.states) throw ValidateError("invalid state " + std::to_string(state));
  BehaviorTrunc node;
  node.depth = depth;
  if (depth == 0) return node;
  node.position = c.position[state];
  node.children.reserve(c.successor[state].size());
  for (std::size_t d = 0; d < c.successor[state].size(); ++d) {
    node.children.push_back(unfold_behavior(c, c.successor[state][d], depth - 1));
  }
  return node;
}

}  // namespace polytree

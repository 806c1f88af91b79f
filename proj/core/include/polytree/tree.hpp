#pragma once

#include "polytree/budget.hpp"
#include "polytree/coalgebra.hpp"
#include "polytree/count.hpp"
#include "polytree/poly.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace polytree {

/// Finite presentation of a polynomial tree: a coalgebra whose states are
/// nodes, each carrying a polynomial and a total transition table over its
/// position-direction pairs.
struct FiniteTreeData {
  std::vector<PolyCode> code;                            // per node
  std::vector<std::vector<std::vector<std::size_t>>> next;  // node -> i -> d -> node
  std::size_t root = 0;
};

void validate(const FiniteTreeData& t);

struct LazyNodeImpl;

/// A polynomial tree: an interface that may transition to a new polynomial
/// after every output/input round. Either a node of a finite presentation
/// or a lazily unfolded node. Handles are immutable and cheap to copy.
class Tree {
public:
  /// Generator for a lazy node: produces the node's polynomial and its
  /// child function. Must be pure; it is invoked at most once per node.
  using LazyGen =
      std::function<std::pair<PolyCode, std::function<Tree(std::size_t, std::size_t)>>()>;

  Tree() = default;

  static Tree finite(FiniteTreeData data);
  static Tree finite(std::shared_ptr<const FiniteTreeData> data);
  static Tree finite_at(std::shared_ptr<const FiniteTreeData> data, std::size_t node);
  static Tree lazy(LazyGen gen);

  bool valid() const { return finite_ != nullptr || lazy_ != nullptr; }
  bool is_finite() const { return finite_ != nullptr; }

  /// The polynomial at this node (forces a lazy node once).
  const PolyCode& root() const;

  /// The child tree after emitting position i and receiving direction d.
  Tree child(std::size_t i, std::size_t d) const;

  const std::shared_ptr<const FiniteTreeData>& finite_data() const { return finite_; }
  std::size_t node() const { return node_; }

  /// Identity of the underlying presentation object, for memo tables.
  /// Finite handles at the same node share it; a lazy node is its own.
  const void* presentation() const {
    return finite_ ? static_cast<const void*>(finite_.get()) : static_cast<const void*>(lazy_.get());
  }

  /// Same presentation handle (not semantic equality).
  friend bool same_handle(const Tree& a, const Tree& b) {
    return a.finite_ == b.finite_ && a.node_ == b.node_ && a.lazy_ == b.lazy_;
  }

private:
  std::shared_ptr<const FiniteTreeData> finite_;
  std::size_t node_ = 0;
  std::shared_ptr<LazyNodeImpl> lazy_;
};

/// Build a lazy tree from a seed and a pure step function
/// Seed -> (PolyCode, (i, d) -> Seed).
template <class Seed, class Step>
Tree unfold_tree(Seed seed, Step step) {
  struct Factory : std::enable_shared_from_this<Factory> {
    Step step;
    explicit Factory(Step s) : step(std::move(s)) {}
    Tree make(Seed s) {
      auto self = this->shared_from_this();
      return Tree::lazy([self, s = std::move(s)]() {
        auto [code, next] = self->step(s);
        std::function<Tree(std::size_t, std::size_t)> children =
            [self, next = std::move(next)](std::size_t i, std::size_t d) {
              return self->make(next(i, d));
            };
        return std::pair{std::move(code), std::move(children)};
      });
    }
  };
  auto factory = std::make_shared<Factory>(std::move(step));
  return factory->make(std::move(seed));
}

/// The single-node self-looping tree on p: an interface that never changes.
Tree constant_tree(PolyCode p);

/// Coproduct of trees: the root polynomials are summed and each summand
/// keeps its own children.
Tree sum_tree(const Tree& a, const Tree& b);

/// Parallel composition: both interfaces run side by side and transition
/// independently. Finite inputs yield a finite result on the reachable
/// product nodes, re-indexed breadth-first from the root.
Tree tensor_tree(const Tree& a, const Tree& b, const Budget& budget = {});
Tree tensor_tree(std::span<const Tree> ts, const Budget& budget = {});

/// Finite tensor plus, per result node, the pair of factor nodes it came
/// from. Both inputs must be finite.
struct TensorProvenance {
  Tree tree;
  std::vector<std::pair<std::size_t, std::size_t>> factors;  // per node of tree
};
TensorProvenance tensor_tree_with_provenance(const Tree& a, const Tree& b,
                                             const Budget& budget = {});

/// Cartesian action of a fixed polynomial on a tree: p-directions cause no
/// transition, tree directions transition as in t.
Tree act_prod(const PolyCode& p, const Tree& t, const Budget& budget = {});

/// Depth-bounded tree of polynomials. Depth 0 carries no data.
struct TruncTree {
  std::size_t depth = 0;
  std::optional<PolyCode> code;                 // nullopt iff depth == 0
  std::vector<std::vector<TruncTree>> children;  // [i][d], depth-1 each
};

/// Shape equality: polynomials compared by direction counts, labels ignored.
bool operator==(const TruncTree& a, const TruncTree& b);
inline bool operator!=(const TruncTree& a, const TruncTree& b) { return !(a == b); }

TruncTree truncate(const Tree& t, std::size_t depth, const Budget& budget = {});

/// Forget the layers below depth m (requires m <= t.depth).
TruncTree restrict_depth(const TruncTree& t, std::size_t m);

/// Depth-bounded bisimilarity: equality of the depth-n truncations.
bool bisimilar(const Tree& a, const Tree& b, std::size_t depth, const Budget& budget = {});

/// Exact bisimilarity, decided by partition refinement. Finite trees only.
bool bisimilar(const Tree& a, const Tree& b);

/// Reachable part of a finite tree, re-indexed breadth-first from the root.
std::shared_ptr<const FiniteTreeData> canonicalize(const Tree& t);

/// Equality of canonical presentations (stronger than bisimilarity).
bool structurally_equal(const Tree& a, const Tree& b);

// Strategy existence for maps between the unit tree and t, decided as
// greatest fixpoints over the finite node set. A chosen position with no
// directions terminates the branch successfully; a node with no positions
// has no outgoing strategy.

bool exists_map_from_y(const Tree& t);
bool exists_map_to_y(const Tree& t);

inline constexpr std::size_t kNoChoice = static_cast<std::size_t>(-1);

/// Winning choice of position per node (kNoChoice outside the fixpoint);
/// nullopt when no strategy exists from the root.
std::optional<std::vector<std::size_t>> from_y_strategy(const Tree& t);

/// Chosen direction per (node, position); nullopt when no strategy exists.
std::optional<std::vector<std::vector<std::size_t>>> to_y_strategy(const Tree& t);

/// Number of depth-n behaviors of t: pick a root position, then recurse
/// along every direction. Generalizes the cofree count to trees.
Count behavior_count(const Tree& t, std::size_t depth, const Budget& budget = {});

/// All depth-n behaviors in canonical order (position-major, children in
/// direction order).
std::vector<BehaviorTrunc> enumerate_behaviors(const Tree& t, std::size_t depth,
                                               const Budget& budget = {});

}  // namespace polytree

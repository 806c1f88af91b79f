#pragma once

#include "polytree/budget.hpp"
#include "polytree/count.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polytree {

/// Depth-n element of the hom tower between two trees: a root map plus,
/// per internal-hom direction (i, e) of the root map, a depth-(n-1)
/// morphism between the corresponding child trees. Depth 0 carries no data.
struct TruncMorphism {
  std::size_t depth = 0;
  std::optional<PolyMap> root_map;                    // nullopt iff depth == 0
  std::vector<std::vector<TruncMorphism>> children;   // [i][e], e over target dirs at on_pos(i)
};

bool operator==(const TruncMorphism& a, const TruncMorphism& b);
inline bool operator!=(const TruncMorphism& a, const TruncMorphism& b) { return !(a == b); }

/// Forget the layers below depth m (requires m <= f.depth).
TruncMorphism restrict_depth(const TruncMorphism& f, std::size_t m);

/// Well-formedness of f as a depth-n morphism p -> q.
struct TruncCheck {
  bool ok = true;
  std::string path;
  std::string message;
  explicit operator bool() const { return ok; }
};
TruncCheck validate_trunc(const TruncMorphism& f, const Tree& p, const Tree& q, std::size_t depth);

/// Number of depth-n morphisms p -> q (the hom-tower recurrence, base 1).
Count trunc_hom_count(const Tree& p, const Tree& q, std::size_t depth);

/// Visit all depth-n morphisms in canonical order: lexicographic in the
/// root-map rank and then in the children, slot order (i, e). The visitor
/// returns false to stop. Counts are checked against the budget first.
void for_each_trunc_hom(const Tree& p, const Tree& q, std::size_t depth,
                        const std::function<bool(const TruncMorphism&)>& visit,
                        const Budget& budget = {});

std::vector<TruncMorphism> enumerate_trunc_homs(const Tree& p, const Tree& q, std::size_t depth,
                                                const Budget& budget = {});

/// Uniformly random depth-n morphism (for randomized law checks).
TruncMorphism sample_trunc_hom(const Tree& p, const Tree& q, std::size_t depth, std::mt19937& rng,
                               const Budget& budget = {});

TruncMorphism id_trunc(const Tree& t, std::size_t depth);

/// Diagrammatic composition of equal-depth morphisms through a shared
/// middle tree.
TruncMorphism compose_trunc(const TruncMorphism& first, const TruncMorphism& second);

/// Coproduct structure: injections into a sum tree and copairing.
TruncMorphism injection_trunc(const Tree& p, const Tree& q, std::size_t which, std::size_t depth);
TruncMorphism copair_trunc(const TruncMorphism& f, const TruncMorphism& g);

/// Parallel composition of morphisms.
TruncMorphism tensor_trunc(const TruncMorphism& f, const TruncMorphism& g);

// Structural isomorphisms of the tensor, generated to a requested depth.
TruncMorphism braid_trunc(const Tree& p, const Tree& q, std::size_t depth,
                          const Budget& budget = {});
TruncMorphism assoc_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                          const Budget& budget = {});
TruncMorphism assoc_inv_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                              const Budget& budget = {});
TruncMorphism left_unit_trunc(const Tree& p, std::size_t depth, const Budget& budget = {});
TruncMorphism left_unit_inv_trunc(const Tree& p, std::size_t depth, const Budget& budget = {});
TruncMorphism right_unit_trunc(const Tree& p, std::size_t depth, const Budget& budget = {});
TruncMorphism right_unit_inv_trunc(const Tree& p, std::size_t depth, const Budget& budget = {});
TruncMorphism distrib_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                            const Budget& budget = {});
TruncMorphism distrib_inv_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                                const Budget& budget = {});

/// The morphism between constant trees that applies one polynomial map at
/// every depth.
TruncMorphism constant_trunc(const PolyMap& f, std::size_t depth);

/// Internal hom tree: positions of the root are maps between the root
/// polynomials, and the child at (map, (i, e)) is the internal hom of the
/// corresponding child trees. Lazy; sizes are checked on demand.
Tree ihom_tree(const Tree& p, const Tree& q, const Budget& budget = {});

/// Currying across the tensor-hom adjunction: a morphism r (x) p -> q
/// becomes a morphism r -> ihom(p, q), and back. Mutually inverse at every
/// depth.
TruncMorphism curry_trunc(const TruncMorphism& f, const Tree& r, const Tree& p, const Tree& q,
                          const Budget& budget = {});
TruncMorphism uncurry_trunc(const TruncMorphism& g, const Tree& r, const Tree& p, const Tree& q,
                            const Budget& budget = {});

}  // namespace polytree

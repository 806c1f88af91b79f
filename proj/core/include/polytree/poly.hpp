#pragma once

#include "polytree/budget.hpp"
#include "polytree/count.hpp"
#include "polytree/errors.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polytree {

/// One position of a finite polynomial: a direction count plus optional
/// metadata labels. Labels never influence any operation's semantics.
struct PositionEntry {
  std::optional<std::string> label;
  std::size_t dirs = 0;
  std::optional<std::vector<std::string>> dir_labels;

  friend bool operator==(const PositionEntry&, const PositionEntry&) = default;
};

/// A finite polynomial in one variable: an ordered list of positions, each
/// with a finite direction count. The empty list is the polynomial 0; a
/// position with zero directions is a constant summand. Values are
/// immutable and share their storage, so copies are cheap.
class PolyCode {
public:
  PolyCode() = default;
  explicit PolyCode(std::vector<PositionEntry> entries);

  /// Unlabeled polynomial with the given direction counts.
  static PolyCode from_dirs(std::vector<std::size_t> dir_counts);
  static PolyCode zero() { return PolyCode(); }
  static PolyCode one() { return from_dirs({0}); }
  static PolyCode y() { return from_dirs({1}); }
  static PolyCode y_pow(std::size_t n) { return from_dirs({n}); }
  /// n y^0, the constant polynomial with n positions.
  static PolyCode constant(std::size_t n);
  /// M y^N.
  static PolyCode monomial(std::size_t coeff, std::size_t exponent);

  std::size_t size() const { return positions_ ? positions_->size() : 0; }
  std::size_t dirs(std::size_t i) const { return (*positions_)[i].dirs; }
  const PositionEntry& at(std::size_t i) const { return (*positions_)[i]; }
  const std::vector<PositionEntry>& positions() const;
  std::size_t total_dirs() const;

  /// Shape comparison: position count and direction counts only.
  /// This is the semantic equality; labels are metadata.
  bool same_shape(const PolyCode& other) const;

  /// Structural equality including labels.
  friend bool operator==(const PolyCode& a, const PolyCode& b) {
    return a.positions_ == b.positions_ || a.positions() == b.positions();
  }

  /// Human-readable form such as "y^2 + 1", for diagnostics.
  std::string describe() const;

  /// Identity of the shared storage; equal handles share it. Usable as a
  /// cache key while a copy of this value is kept alive.
  const void* identity() const { return positions_.get(); }

private:
  std::shared_ptr<const std::vector<PositionEntry>> positions_;
};

/// Throws ValidateError on duplicate labels or dir_labels length mismatch.
void validate(const PolyCode& p);

/// The shape code of a polynomial: position count plus direction counts.
struct UniverseCode {
  std::size_t position_count = 0;
  std::vector<std::size_t> dir_counts;

  friend bool operator==(const UniverseCode&, const UniverseCode&) = default;
};

UniverseCode code_of(const PolyCode& p);
PolyCode realize(const UniverseCode& code);

/// A polynomial map: forward on positions, backward on directions.
/// on_dir(i) is a total function from the target's directions at on_pos(i)
/// into the source's directions at i.
class PolyMap {
public:
  PolyMap(PolyCode source, PolyCode target, std::vector<std::size_t> on_pos,
          std::vector<std::vector<std::size_t>> on_dir);

  const PolyCode& source() const { return source_; }
  const PolyCode& target() const { return target_; }
  std::size_t on_pos(std::size_t i) const { return on_pos_[i]; }
  std::size_t on_dir(std::size_t i, std::size_t e) const { return on_dir_[i][e]; }
  const std::vector<std::size_t>& on_pos_table() const { return on_pos_; }
  const std::vector<std::vector<std::size_t>>& on_dir_table() const { return on_dir_; }

  /// Equality of the index data; endpoints compared by shape.
  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.source_.same_shape(b.source_) && a.target_.same_shape(b.target_) &&
           a.on_pos_ == b.on_pos_ && a.on_dir_ == b.on_dir_;
  }

private:
  PolyCode source_;
  PolyCode target_;
  std::vector<std::size_t> on_pos_;
  std::vector<std::vector<std::size_t>> on_dir_;
};

PolyMap identity_poly_map(const PolyCode& p);

/// Diagrammatic composition: first, then second.
PolyMap compose_poly_maps(const PolyMap& first, const PolyMap& second);

/// True iff every backward component is a bijection.
bool is_cartesian(const PolyMap& f);

/// Exact number of maps p -> q (the closed-form product-of-sums count).
Count poly_map_count(const PolyCode& p, const PolyCode& q);

/// All maps p -> q in lexicographic order of (on_pos, on_dir).
std::vector<PolyMap> enumerate_maps(const PolyCode& p, const PolyCode& q,
                                    const Budget& budget = {});

/// Visit maps in canonical order without materializing the list.
/// The visitor returns false to stop early.
void for_each_map(const PolyCode& p, const PolyCode& q,
                  const std::function<bool(const PolyMap&)>& visit,
                  const Budget& budget = {});

/// Rank of a map within the canonical enumeration order (no enumeration).
Count poly_map_rank(const PolyMap& f);

/// Map at a given rank of the canonical order (inverse of poly_map_rank).
PolyMap poly_map_at_rank(const PolyCode& p, const PolyCode& q, const Count& rank);

// Sums, products, tensor, substitution, internal hom. All results use the
// canonical index orders documented with each operation, so equality of
// derived polynomials is structural.

/// Concatenates position lists. Position labels are kept only when they
/// stay unique across the result.
PolyCode sum_poly(std::span<const PolyCode> ps, const Budget& budget = {});
PolyCode sum_poly(const PolyCode& p, const PolyCode& q, const Budget& budget = {});

/// Positions are tuples (first factor most significant); directions are
/// the disjoint sum of the factors' directions, ordered factor by factor.
PolyCode prod_poly(std::span<const PolyCode> ps, const Budget& budget = {});
PolyCode prod_poly(const PolyCode& p, const PolyCode& q, const Budget& budget = {});

/// Parallel (Dirichlet) product: positions are pairs (i-major); the
/// direction set at (i,j) is p[i] x q[j], first component most significant.
PolyCode tensor_poly(const PolyCode& p, const PolyCode& q, const Budget& budget = {});

/// Substitution p(q(-)): a position is a pair of i and a function
/// assigning a q-position to each direction of i (functions enumerated
/// lexicographically, direction 0 most significant); a direction is a pair
/// (d, e), d-major.
PolyCode subst_poly(const PolyCode& p, const PolyCode& q, const Budget& budget = {});

/// Internal hom for the tensor product: one position per map p -> q in
/// enumeration order; the directions at a map are the pairs (i, e) of a
/// source position and a target direction at its image, i-major.
PolyCode ihom_poly(const PolyCode& p, const PolyCode& q, const Budget& budget = {});

/// Decode position k of ihom_poly(p, q) back to the k-th enumerated map.
PolyMap ihom_position_map(const PolyCode& p, const PolyCode& q, std::size_t k);

/// Direction count of ihom_poly(p, q) at a given map.
std::size_t ihom_dir_count(const PolyMap& f);

/// Flat index of the ihom direction (i, e) at a map, and its inverse.
std::size_t ihom_dir_flat(const PolyMap& f, std::size_t i, std::size_t e);
std::pair<std::size_t, std::size_t> ihom_dir_unflat(const PolyMap& f, std::size_t flat);

// Index helpers for the canonical tensor layout.
std::size_t tensor_pos_flat(const PolyCode& p, const PolyCode& q, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> tensor_pos_unflat(const PolyCode& p, const PolyCode& q,
                                                      std::size_t flat);
std::size_t tensor_dir_flat(const PolyCode& p, const PolyCode& q, std::size_t i, std::size_t j,
                            std::size_t d, std::size_t e);
std::pair<std::size_t, std::size_t> tensor_dir_unflat(const PolyCode& p, const PolyCode& q,
                                                      std::size_t i, std::size_t j,
                                                      std::size_t flat);

// Structure maps. The tensor associator, unitors and distributivity are
// identity permutations in the canonical layout but are still produced as
// explicit maps so law suites exercise real compositions.

PolyMap tensor_map(const PolyMap& f, const PolyMap& g);
PolyMap copair_map(const PolyMap& f, const PolyMap& g);
PolyMap injection_map(const PolyCode& p, const PolyCode& q, std::size_t which);
PolyMap braid_map(const PolyCode& p, const PolyCode& q);
PolyMap assoc_map(const PolyCode& p, const PolyCode& q, const PolyCode& r);
PolyMap assoc_inv_map(const PolyCode& p, const PolyCode& q, const PolyCode& r);
PolyMap left_unit_map(const PolyCode& p);       // y (x) p -> p
PolyMap left_unit_inv_map(const PolyCode& p);
PolyMap right_unit_map(const PolyCode& p);      // p (x) y -> p
PolyMap right_unit_inv_map(const PolyCode& p);
PolyMap distrib_map(const PolyCode& p, const PolyCode& q, const PolyCode& r);
PolyMap distrib_inv_map(const PolyCode& p, const PolyCode& q, const PolyCode& r);

}  // namespace polytree

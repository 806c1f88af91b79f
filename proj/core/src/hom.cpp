#include "polytree/hom.hpp"

#include "polytree/errors.hpp"
#include "polytree/index.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace polytree {

namespace {
const Budget kUnbounded{std::numeric_limits<std::uint64_t>::max()};

using NodeKey = std::pair<const void*, std::size_t>;
NodeKey node_key(const Tree& t) { return {t.presentation(), t.is_finite() ? t.node() : 0}; }

// Currying revisits the same handful of code pairs at every node, so the
// internal hom and the root-map list are cached per storage identity. The
// cached codes keep their storage alive, which keeps the keys unique.
struct RootHomEntry {
  PolyCode p, q;
  PolyCode hom;
  std::vector<PolyMap> maps;  // empty when the map set is too large to keep

  std::size_t rank_of(const PolyMap& f) const {
    if (!maps.empty()) {
      for (std::size_t k = 0; k < maps.size(); ++k) {
        if (maps[k] == f) return k;
      }
    }
    return to_size_t(poly_map_rank(f));
  }

  PolyMap map_at(std::size_t k) const {
    if (!maps.empty()) return maps[k];
    return poly_map_at_rank(p, q, Count(k));
  }
};

const RootHomEntry& root_hom(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  static std::mutex mu;
  static std::map<std::pair<const void*, const void*>, RootHomEntry> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p.identity(), q.identity());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RootHomEntry entry{p, q, ihom_poly(p, q, budget), {}};
  if (poly_map_count(p, q) <= Count(10'000)) {
    entry.maps = enumerate_maps(p, q, kUnbounded);
  }
  return cache.emplace(key, std::move(entry)).first->second;
}
}  // namespace

bool operator==(const TruncMorphism& a, const TruncMorphism& b) {
  if (a.depth != b.depth) return false;
  if (a.depth == 0) return true;
  if (!a.root_map || !b.root_map || !(*a.root_map == *b.root_map)) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i].size() != b.children[i].size()) return false;
    for (std::size_t e = 0; e < a.children[i].size(); ++e) {
      if (!(a.children[i][e] == b.children[i][e])) return false;
    }
  }
  return true;
}

TruncMorphism restrict_depth(const TruncMorphism& f, std::size_t m) {
  if (m > f.depth) throw ValidateError("cannot deepen a truncated morphism");
  TruncMorphism out;
  out.depth = m;
  if (m == 0) return out;
  out.root_map = f.root_map;
  out.children.resize(f.children.size());
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    out.children[i].reserve(f.children[i].size());
    for (const auto& c : f.children[i]) out.children[i].push_back(restrict_depth(c, m - 1));
  }
  return out;
}

namespace {

TruncCheck fail(std::string path, std::string message) {
  return TruncCheck{false, std::move(path), std::move(message)};
}

TruncCheck validate_trunc_impl(const TruncMorphism& f, const Tree& p, const Tree& q,
                               std::size_t depth, const std::string& path) {
  if (f.depth != depth) {
    return fail(path, "depth " + std::to_string(f.depth) + ", expected " + std::to_string(depth));
  }
  if (depth == 0) {
    if (f.root_map || !f.children.empty()) return fail(path, "depth-0 morphism carries data");
    return {};
  }
  if (!f.root_map) return fail(path, "missing root map");
  const PolyMap& root = *f.root_map;
  if (!root.source().same_shape(p.root())) {
    return fail(path, "root map source " + root.source().describe() + " does not match " +
                          p.root().describe());
  }
  if (!root.target().same_shape(q.root())) {
    return fail(path, "root map target " + root.target().describe() + " does not match " +
                          q.root().describe());
  }
  if (f.children.size() != p.root().size()) return fail(path, "children rows mismatch");
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    std::size_t j = root.on_pos(i);
    if (f.children[i].size() != q.root().dirs(j)) {
      return fail(path + "(" + std::to_string(i) + ",*)", "children row length mismatch");
    }
    for (std::size_t e = 0; e < f.children[i].size(); ++e) {
      std::size_t d = root.on_dir(i, e);
      TruncCheck sub =
          validate_trunc_impl(f.children[i][e], p.child(i, d), q.child(j, e), depth - 1,
                              path + "(" + std::to_string(i) + "," + std::to_string(e) + ")");
      if (!sub.ok) return sub;
    }
  }
  return {};
}

}  // namespace

TruncCheck validate_trunc(const TruncMorphism& f, const Tree& p, const Tree& q,
                          std::size_t depth) {
  return validate_trunc_impl(f, p, q, depth, "");
}

namespace {

using HomMemo = std::map<std::tuple<NodeKey, NodeKey, std::size_t>, Count>;

Count trunc_hom_count_impl(const Tree& p, const Tree& q, std::size_t depth, HomMemo& memo) {
  if (depth == 0) return 1;
  auto key = std::make_tuple(node_key(p), node_key(q), depth);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  Count total = 1;
  for (std::size_t i = 0; i < cp.size() && total != 0; ++i) {
    Count sum_j = 0;
    for (std::size_t j = 0; j < cq.size(); ++j) {
      Count prod_e = 1;
      for (std::size_t e = 0; e < cq.dirs(j) && prod_e != 0; ++e) {
        Count sum_d = 0;
        for (std::size_t d = 0; d < cp.dirs(i); ++d) {
          sum_d += trunc_hom_count_impl(p.child(i, d), q.child(j, e), depth - 1, memo);
        }
        prod_e *= sum_d;
      }
      sum_j += prod_e;
    }
    total *= sum_j;
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

Count trunc_hom_count(const Tree& p, const Tree& q, std::size_t depth) {
  HomMemo memo;
  return trunc_hom_count_impl(p, q, depth, memo);
}

namespace {

struct HomSlot {
  std::size_t i, e;
  Tree pc, qc;
};

// The child slots of a root map, in canonical (i, e) order.
std::vector<HomSlot> hom_slots(const PolyMap& root, const Tree& p, const Tree& q) {
  std::vector<HomSlot> slots;
  for (std::size_t i = 0; i < root.source().size(); ++i) {
    std::size_t j = root.on_pos(i);
    for (std::size_t e = 0; e < root.target().dirs(j); ++e) {
      std::size_t d = root.on_dir(i, e);
      slots.push_back(HomSlot{i, e, p.child(i, d), q.child(j, e)});
    }
  }
  return slots;
}

template <class Pick>
TruncMorphism assemble(std::size_t depth, const PolyMap& root, const std::vector<HomSlot>& slots,
                       Pick&& pick) {
  TruncMorphism out;
  out.depth = depth;
  out.root_map = root;
  out.children.resize(root.source().size());
  for (std::size_t i = 0; i < out.children.size(); ++i) {
    out.children[i].resize(root.target().dirs(root.on_pos(i)));
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    out.children[slots[s].i][slots[s].e] = pick(s);
  }
  return out;
}

std::vector<TruncMorphism> enumerate_impl(const Tree& p, const Tree& q, std::size_t depth,
                                          HomMemo& memo);

bool for_each_impl(const Tree& p, const Tree& q, std::size_t depth,
                   const std::function<bool(const TruncMorphism&)>& visit, HomMemo& memo) {
  if (depth == 0) return visit(TruncMorphism{});
  bool keep_going = true;
  for_each_map(
      p.root(), q.root(),
      [&](const PolyMap& root) {
        std::vector<HomSlot> slots = hom_slots(root, p, q);
        for (const auto& s : slots) {
          if (trunc_hom_count_impl(s.pc, s.qc, depth - 1, memo) == 0) return true;  // next map
        }
        std::vector<std::vector<TruncMorphism>> lists(slots.size());
        std::vector<std::size_t> radices(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
          lists[s] = enumerate_impl(slots[s].pc, slots[s].qc, depth - 1, memo);
          radices[s] = lists[s].size();
        }
        std::vector<std::size_t> pick(slots.size(), 0);
        while (true) {
          TruncMorphism out = assemble(depth, root, slots, [&](std::size_t s) -> TruncMorphism {
            return lists[s][pick[s]];
          });
          if (!visit(out)) {
            keep_going = false;
            return false;
          }
          if (pick.empty() || !mixed_radix_next(radices, pick)) break;
        }
        return true;
      },
      kUnbounded);
  return keep_going;
}

std::vector<TruncMorphism> enumerate_impl(const Tree& p, const Tree& q, std::size_t depth,
                                          HomMemo& memo) {
  std::vector<TruncMorphism> out;
  for_each_impl(
      p, q, depth,
      [&](const TruncMorphism& f) {
        out.push_back(f);
        return true;
      },
      memo);
  return out;
}

}  // namespace

void for_each_trunc_hom(const Tree& p, const Tree& q, std::size_t depth,
                        const std::function<bool(const TruncMorphism&)>& visit,
                        const Budget& budget) {
  HomMemo memo;
  Count total = trunc_hom_count_impl(p, q, depth, memo);
  budget.check("enumerate tree morphisms", total);
  for_each_impl(p, q, depth, visit, memo);
}

std::vector<TruncMorphism> enumerate_trunc_homs(const Tree& p, const Tree& q, std::size_t depth,
                                                const Budget& budget) {
  std::vector<TruncMorphism> out;
  for_each_trunc_hom(
      p, q, depth,
      [&](const TruncMorphism& f) {
        out.push_back(f);
        return true;
      },
      budget);
  return out;
}

namespace {

Count uniform_count(std::mt19937& rng, const Count& bound) {
  std::size_t bits = msb(bound) + 1;
  while (true) {
    Count r = 0;
    for (std::size_t got = 0; got < bits; got += 32) {
      r <<= 32;
      r += Count(rng());
    }
    r >>= (32 - bits % 32) % 32;
    if (r < bound) return r;
  }
}

TruncMorphism sample_impl(const Tree& p, const Tree& q, std::size_t depth, std::mt19937& rng,
                          HomMemo& memo) {
  if (depth == 0) return TruncMorphism{};
  Count total = trunc_hom_count_impl(p, q, depth, memo);
  if (total == 0) throw Error("no morphisms to sample from");
  Count r = uniform_count(rng, total);

  TruncMorphism out;
  for_each_map(
      p.root(), q.root(),
      [&](const PolyMap& root) {
        std::vector<HomSlot> slots = hom_slots(root, p, q);
        Count block = 1;
        for (const auto& s : slots) {
          block *= trunc_hom_count_impl(s.pc, s.qc, depth - 1, memo);
          if (block == 0) break;
        }
        if (r >= block) {
          r -= block;
          return true;
        }
        std::vector<TruncMorphism> picks(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
          picks[s] = sample_impl(slots[s].pc, slots[s].qc, depth - 1, rng, memo);
        }
        out = assemble(depth, root, slots,
                       [&](std::size_t s) -> TruncMorphism { return picks[s]; });
        return false;
      },
      kUnbounded);
  return out;
}

}  // namespace

TruncMorphism sample_trunc_hom(const Tree& p, const Tree& q, std::size_t depth, std::mt19937& rng,
                               const Budget& budget) {
  HomMemo memo;
  Count total = trunc_hom_count_impl(p, q, depth, memo);
  budget.check("sample tree morphism (root enumeration)",
               poly_map_count(p.root(), q.root()));
  if (total == 0) throw Error("no morphisms to sample from");
  return sample_impl(p, q, depth, rng, memo);
}

TruncMorphism id_trunc(const Tree& t, std::size_t depth) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& c = t.root();
  out.root_map = identity_poly_map(c);
  out.children.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.children[i].reserve(c.dirs(i));
    for (std::size_t e = 0; e < c.dirs(i); ++e) {
      out.children[i].push_back(id_trunc(t.child(i, e), depth - 1));
    }
  }
  return out;
}

TruncMorphism compose_trunc(const TruncMorphism& first, const TruncMorphism& second) {
  if (first.depth != second.depth) throw ValidateError("compose: depths differ");
  TruncMorphism out;
  out.depth = first.depth;
  if (out.depth == 0) return out;
  out.root_map = compose_poly_maps(*first.root_map, *second.root_map);
  const PolyMap& f = *first.root_map;
  const PolyMap& g = *second.root_map;
  out.children.resize(f.source().size());
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    std::size_t j = f.on_pos(i);
    std::size_t k = g.on_pos(j);
    out.children[i].reserve(g.target().dirs(k));
    for (std::size_t h = 0; h < g.target().dirs(k); ++h) {
      std::size_t e = g.on_dir(j, h);
      out.children[i].push_back(compose_trunc(first.children[i][e], second.children[j][h]));
    }
  }
  return out;
}

TruncMorphism injection_trunc(const Tree& p, const Tree& q, std::size_t which, std::size_t depth) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  out.root_map = injection_map(p.root(), q.root(), which);
  const Tree& src = which == 0 ? p : q;
  const PolyCode& c = src.root();
  out.children.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.children[i].reserve(c.dirs(i));
    for (std::size_t e = 0; e < c.dirs(i); ++e) {
      out.children[i].push_back(id_trunc(src.child(i, e), depth - 1));
    }
  }
  return out;
}

TruncMorphism copair_trunc(const TruncMorphism& f, const TruncMorphism& g) {
  if (f.depth != g.depth) throw ValidateError("copair: depths differ");
  TruncMorphism out;
  out.depth = f.depth;
  if (out.depth == 0) return out;
  out.root_map = copair_map(*f.root_map, *g.root_map);
  out.children = f.children;
  out.children.insert(out.children.end(), g.children.begin(), g.children.end());
  return out;
}

TruncMorphism tensor_trunc(const TruncMorphism& f, const TruncMorphism& g) {
  if (f.depth != g.depth) throw ValidateError("tensor: depths differ");
  TruncMorphism out;
  out.depth = f.depth;
  if (out.depth == 0) return out;
  const PolyMap& a = *f.root_map;
  const PolyMap& b = *g.root_map;
  out.root_map = tensor_map(a, b);
  out.children.resize(out.root_map->source().size());
  for (std::size_t i = 0; i < a.source().size(); ++i) {
    for (std::size_t i2 = 0; i2 < b.source().size(); ++i2) {
      std::size_t s = tensor_pos_flat(a.source(), b.source(), i, i2);
      std::size_t j = a.on_pos(i);
      std::size_t j2 = b.on_pos(i2);
      out.children[s].resize(a.target().dirs(j) * b.target().dirs(j2));
      for (std::size_t e = 0; e < a.target().dirs(j); ++e) {
        for (std::size_t e2 = 0; e2 < b.target().dirs(j2); ++e2) {
          out.children[s][tensor_dir_flat(a.target(), b.target(), j, j2, e, e2)] =
              tensor_trunc(f.children[i][e], g.children[i2][e2]);
        }
      }
    }
  }
  return out;
}

TruncMorphism braid_trunc(const Tree& p, const Tree& q, std::size_t depth, const Budget& budget) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  budget.check("braid", Count(cp.size()) * Count(cq.size()));
  out.root_map = braid_map(cp, cq);
  out.children.resize(cp.size() * cq.size());
  for (std::size_t i = 0; i < cp.size(); ++i) {
    for (std::size_t j = 0; j < cq.size(); ++j) {
      std::size_t s = tensor_pos_flat(cp, cq, i, j);
      out.children[s].resize(cp.dirs(i) * cq.dirs(j));
      // target directions at (j, i) are pairs (e, d), e-major
      for (std::size_t e = 0; e < cq.dirs(j); ++e) {
        for (std::size_t d = 0; d < cp.dirs(i); ++d) {
          out.children[s][e * cp.dirs(i) + d] =
              braid_trunc(p.child(i, d), q.child(j, e), depth - 1, budget);
        }
      }
    }
  }
  return out;
}

namespace {

// Both associators share the coinductive recursion; only the root map's
// endpoints differ.
TruncMorphism assoc_like(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                         const Budget& budget, bool inverse) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  const PolyCode& cr = r.root();
  budget.check("associator", Count(cp.size()) * Count(cq.size()) * Count(cr.size()));
  out.root_map = inverse ? assoc_inv_map(cp, cq, cr) : assoc_map(cp, cq, cr);
  out.children.resize(out.root_map->source().size());
  for (std::size_t i = 0; i < cp.size(); ++i) {
    for (std::size_t j = 0; j < cq.size(); ++j) {
      for (std::size_t k = 0; k < cr.size(); ++k) {
        std::size_t s = (i * cq.size() + j) * cr.size() + k;
        out.children[s].resize(cp.dirs(i) * cq.dirs(j) * cr.dirs(k));
        for (std::size_t d = 0; d < cp.dirs(i); ++d) {
          for (std::size_t e = 0; e < cq.dirs(j); ++e) {
            for (std::size_t f = 0; f < cr.dirs(k); ++f) {
              std::size_t flat = (d * cq.dirs(j) + e) * cr.dirs(k) + f;
              out.children[s][flat] = assoc_like(p.child(i, d), q.child(j, e), r.child(k, f),
                                                 depth - 1, budget, inverse);
            }
          }
        }
      }
    }
  }
  return out;
}

enum class UnitKind { left, left_inv, right, right_inv };

TruncMorphism unit_like(const Tree& p, std::size_t depth, const Budget& budget, UnitKind kind) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& c = p.root();
  budget.check("unitor", Count(c.size()));
  switch (kind) {
    case UnitKind::left: out.root_map = left_unit_map(c); break;
    case UnitKind::left_inv: out.root_map = left_unit_inv_map(c); break;
    case UnitKind::right: out.root_map = right_unit_map(c); break;
    case UnitKind::right_inv: out.root_map = right_unit_inv_map(c); break;
  }
  out.children.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.children[i].reserve(c.dirs(i));
    for (std::size_t e = 0; e < c.dirs(i); ++e) {
      out.children[i].push_back(unit_like(p.child(i, e), depth - 1, budget, kind));
    }
  }
  return out;
}

TruncMorphism distrib_like(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                           const Budget& budget, bool inverse) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  const PolyCode& cr = r.root();
  out.root_map = inverse ? distrib_inv_map(cp, cq, cr) : distrib_map(cp, cq, cr);
  const PolyCode& src = out.root_map->source();
  out.children.resize(src.size());
  // The children on both sides are the same tensor of child trees, so the
  // subtree data is the identity.
  for (std::size_t s = 0; s < src.size(); ++s) {
    std::size_t i, sum_pos;
    if (!inverse) {
      i = s / (cq.size() + cr.size());
      sum_pos = s % (cq.size() + cr.size());
    } else if (s < cp.size() * cq.size()) {
      i = s / cq.size();
      sum_pos = s % cq.size();
    } else {
      std::size_t s2 = s - cp.size() * cq.size();
      i = s2 / cr.size();
      sum_pos = cq.size() + s2 % cr.size();
    }
    const Tree& factor = sum_pos < cq.size() ? q : r;
    std::size_t jj = sum_pos < cq.size() ? sum_pos : sum_pos - cq.size();
    std::size_t fdirs = factor.root().dirs(jj);
    out.children[s].resize(cp.dirs(i) * fdirs);
    for (std::size_t d = 0; d < cp.dirs(i); ++d) {
      for (std::size_t e = 0; e < fdirs; ++e) {
        out.children[s][d * fdirs + e] =
            id_trunc(tensor_tree(p.child(i, d), factor.child(jj, e), budget), depth - 1);
      }
    }
  }
  return out;
}

}  // namespace

TruncMorphism assoc_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                          const Budget& budget) {
  return assoc_like(p, q, r, depth, budget, false);
}

TruncMorphism assoc_inv_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                              const Budget& budget) {
  return assoc_like(p, q, r, depth, budget, true);
}

TruncMorphism left_unit_trunc(const Tree& p, std::size_t depth, const Budget& budget) {
  return unit_like(p, depth, budget, UnitKind::left);
}
TruncMorphism left_unit_inv_trunc(const Tree& p, std::size_t depth, const Budget& budget) {
  return unit_like(p, depth, budget, UnitKind::left_inv);
}
TruncMorphism right_unit_trunc(const Tree& p, std::size_t depth, const Budget& budget) {
  return unit_like(p, depth, budget, UnitKind::right);
}
TruncMorphism right_unit_inv_trunc(const Tree& p, std::size_t depth, const Budget& budget) {
  return unit_like(p, depth, budget, UnitKind::right_inv);
}

TruncMorphism distrib_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                            const Budget& budget) {
  return distrib_like(p, q, r, depth, budget, false);
}

TruncMorphism distrib_inv_trunc(const Tree& p, const Tree& q, const Tree& r, std::size_t depth,
                                const Budget& budget) {
  return distrib_like(p, q, r, depth, budget, true);
}

TruncMorphism constant_trunc(const PolyMap& f, std::size_t depth) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  out.root_map = f;
  out.children.resize(f.source().size());
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    out.children[i].assign(f.target().dirs(f.on_pos(i)), constant_trunc(f, depth - 1));
  }
  return out;
}

Tree ihom_tree(const Tree& p, const Tree& q, const Budget& budget) {
  return Tree::lazy([p, q, budget]() {
    PolyCode cp = p.root();
    PolyCode cq = q.root();
    PolyCode code = root_hom(cp, cq, budget).hom;
    std::function<Tree(std::size_t, std::size_t)> children =
        [p, q, budget, cp, cq](std::size_t k, std::size_t flat) {
          PolyMap f = root_hom(cp, cq, budget).map_at(k);
          auto [i, e] = ihom_dir_unflat(f, flat);
          std::size_t j = f.on_pos(i);
          std::size_t d = f.on_dir(i, e);
          return ihom_tree(p.child(i, d), q.child(j, e), budget);
        };
    return std::pair{std::move(code), std::move(children)};
  });
}

TruncMorphism curry_trunc(const TruncMorphism& f, const Tree& r, const Tree& p, const Tree& q,
                          const Budget& budget) {
  TruncMorphism out;
  out.depth = f.depth;
  if (f.depth == 0) return out;
  const PolyCode& cr = r.root();
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  const PolyMap& root = *f.root_map;
  if (!root.source().same_shape(tensor_poly(cr, cp, kUnbounded)) ||
      !root.target().same_shape(cq)) {
    throw ValidateError("curry: morphism endpoints do not match the given trees");
  }
  const RootHomEntry& rh = root_hom(cp, cq, budget);
  const PolyCode& hom = rh.hom;

  // Split each tensor row (k, i) into the p -> q component and the residual
  // backward map into r's directions; the two sums commute.
  std::vector<PolyMap> partial;
  partial.reserve(cr.size());
  std::vector<std::size_t> on_pos(cr.size());
  std::vector<std::vector<std::size_t>> on_dir(cr.size());
  for (std::size_t k = 0; k < cr.size(); ++k) {
    std::vector<std::size_t> ppos(cp.size());
    std::vector<std::vector<std::size_t>> pdir(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::size_t s = tensor_pos_flat(cr, cp, k, i);
      std::size_t j = root.on_pos(s);
      ppos[i] = j;
      pdir[i].resize(cq.dirs(j));
      for (std::size_t e = 0; e < cq.dirs(j); ++e) {
        pdir[i][e] = root.on_dir(s, e) % cp.dirs(i);
      }
    }
    PolyMap fk(cp, cq, std::move(ppos), std::move(pdir));
    on_pos[k] = rh.rank_of(fk);
    on_dir[k].resize(hom.dirs(on_pos[k]));
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::size_t s = tensor_pos_flat(cr, cp, k, i);
      for (std::size_t e = 0; e < cq.dirs(fk.on_pos(i)); ++e) {
        on_dir[k][ihom_dir_flat(fk, i, e)] = root.on_dir(s, e) / cp.dirs(i);
      }
    }
    partial.push_back(std::move(fk));
  }
  out.root_map = PolyMap(cr, hom, std::move(on_pos), std::move(on_dir));

  out.children.resize(cr.size());
  for (std::size_t k = 0; k < cr.size(); ++k) {
    const PolyMap& fk = partial[k];
    out.children[k].resize(hom.dirs(out.root_map->on_pos(k)));
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::size_t s = tensor_pos_flat(cr, cp, k, i);
      std::size_t j = fk.on_pos(i);
      for (std::size_t e = 0; e < cq.dirs(j); ++e) {
        std::size_t d = fk.on_dir(i, e);
        std::size_t flat = ihom_dir_flat(fk, i, e);
        std::size_t ff = out.root_map->on_dir(k, flat);
        out.children[k][flat] =
            curry_trunc(f.children[s][e], r.child(k, ff), p.child(i, d), q.child(j, e), budget);
      }
    }
  }
  return out;
}

TruncMorphism uncurry_trunc(const TruncMorphism& g, const Tree& r, const Tree& p, const Tree& q,
                            const Budget& budget) {
  TruncMorphism out;
  out.depth = g.depth;
  if (g.depth == 0) return out;
  const PolyCode& cr = r.root();
  const PolyCode& cp = p.root();
  const PolyCode& cq = q.root();
  const PolyMap& root = *g.root_map;
  const RootHomEntry& rh = root_hom(cp, cq, budget);
  const PolyCode& hom = rh.hom;
  if (!root.source().same_shape(cr) || !root.target().same_shape(hom)) {
    throw ValidateError("uncurry: morphism endpoints do not match the given trees");
  }
  PolyCode source = tensor_poly(cr, cp, kUnbounded);

  std::vector<PolyMap> partial;
  partial.reserve(cr.size());
  for (std::size_t k = 0; k < cr.size(); ++k) {
    partial.push_back(rh.map_at(root.on_pos(k)));
  }

  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t k = 0; k < cr.size(); ++k) {
    const PolyMap& fk = partial[k];
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::size_t s = tensor_pos_flat(cr, cp, k, i);
      std::size_t j = fk.on_pos(i);
      on_pos[s] = j;
      on_dir[s].resize(cq.dirs(j));
      for (std::size_t e = 0; e < cq.dirs(j); ++e) {
        std::size_t ff = root.on_dir(k, ihom_dir_flat(fk, i, e));
        std::size_t d = fk.on_dir(i, e);
        on_dir[s][e] = tensor_dir_flat(cr, cp, k, i, ff, d);
      }
    }
  }
  out.root_map = PolyMap(source, cq, std::move(on_pos), std::move(on_dir));

  out.children.resize(source.size());
  for (std::size_t k = 0; k < cr.size(); ++k) {
    const PolyMap& fk = partial[k];
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::size_t s = tensor_pos_flat(cr, cp, k, i);
      std::size_t j = fk.on_pos(i);
      out.children[s].resize(cq.dirs(j));
      for (std::size_t e = 0; e < cq.dirs(j); ++e) {
        std::size_t flat = ihom_dir_flat(fk, i, e);
        std::size_t ff = root.on_dir(k, flat);
        std::size_t d = fk.on_dir(i, e);
        out.children[s][e] = uncurry_trunc(g.children[k][flat], r.child(k, ff), p.child(i, d),
                                           q.child(j, e), budget);
      }
    }
  }
  return out;
}

}  // namespace polytree

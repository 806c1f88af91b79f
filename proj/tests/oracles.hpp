#pragma once

// Independent oracles used to freeze expected values. These deliberately
// avoid the library's enumeration and counting code paths.

#include "polytree/coalgebra.hpp"
#include "polytree/count.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace oracles {

using polytree::Count;
using polytree::PolyCode;
using polytree::Tree;

using MapTable = std::pair<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>>;

// All maps p -> q assembled position by position: for each source position,
// every (image, backward row) option; the full maps are all combinations.
inline std::vector<MapTable> oracle_all_maps(const PolyCode& p, const PolyCode& q) {
  struct Option {
    std::size_t image;
    std::vector<std::size_t> row;
  };
  std::vector<std::vector<Option>> options(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      std::vector<std::vector<std::size_t>> rows{{}};
      for (std::size_t e = 0; e < q.dirs(j); ++e) {
        std::vector<std::vector<std::size_t>> extended;
        for (const auto& r : rows) {
          for (std::size_t d = 0; d < p.dirs(i); ++d) {
            auto r2 = r;
            r2.push_back(d);
            extended.push_back(std::move(r2));
          }
        }
        rows = std::move(extended);
      }
      for (auto& r : rows) options[i].push_back(Option{j, std::move(r)});
    }
  }
  std::vector<MapTable> out{{{}, {}}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<MapTable> extended;
    for (const auto& partial : out) {
      for (const auto& opt : options[i]) {
        MapTable t = partial;
        t.first.push_back(opt.image);
        t.second.push_back(opt.row);
        extended.push_back(std::move(t));
      }
    }
    out = std::move(extended);
    if (out.empty()) break;
  }
  return out;
}

// First-player win for the take-away game, by explicit two-player
// recursion. A branch where the opponent has no legal reply terminates in
// the mover's favor.
inline bool oracle_first_player_wins(std::size_t heap, const std::vector<std::size_t>& takes) {
  struct Solver {
    const std::vector<std::size_t>& takes;
    bool mover_wins(std::size_t h) const {
      for (std::size_t m : takes) {
        if (m > h) continue;
        if (h - m == 0 || opponent_stuck_or_loses(h - m)) return true;
      }
      return false;
    }
    bool opponent_stuck_or_loses(std::size_t h) const {
      for (std::size_t m : takes) {
        if (m > h) continue;
        if (h - m == 0) return false;       // the opponent empties the heap
        if (!mover_wins(h - m)) return false;
      }
      return true;  // every reply (possibly none) keeps us winning
    }
  };
  return Solver{takes}.mover_wins(heap);
}

// Every coalgebra on a given carrier with the given number of states.
inline std::vector<polytree::SetCoalgebra> oracle_all_coalgebras(const PolyCode& h,
                                                                 std::size_t states) {
  struct Option {
    std::size_t pos;
    std::vector<std::size_t> succ;
  };
  std::vector<Option> options;
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::vector<std::size_t> succ(h.dirs(k), 0);
    while (true) {
      options.push_back({k, succ});
      std::size_t d = succ.size();
      while (d > 0) {
        if (++succ[d - 1] < states) break;
        succ[d - 1] = 0;
        --d;
      }
      if (d == 0) break;
    }
  }
  std::vector<polytree::SetCoalgebra> out;
  std::vector<std::size_t> pick(states, 0);
  while (true) {
    polytree::SetCoalgebra b{h, states, {}, {}};
    for (std::size_t s = 0; s < states; ++s) {
      b.position.push_back(options[pick[s]].pos);
      b.successor.push_back(options[pick[s]].succ);
    }
    out.push_back(std::move(b));
    std::size_t s = states;
    while (s > 0) {
      if (++pick[s - 1] < options.size()) break;
      pick[s - 1] = 0;
      --s;
    }
    if (s == 0) break;
  }
  return out;
}

// The coalgebra-morphism condition checked directly on the structure maps.
inline bool oracle_coalgebra_morphism(const std::vector<std::size_t>& f,
                                      const polytree::SetCoalgebra& a,
                                      const polytree::SetCoalgebra& b) {
  for (std::size_t s = 0; s < a.states; ++s) {
    if (b.position[f[s]] != a.position[s]) return false;
    for (std::size_t d = 0; d < a.successor[s].size(); ++d) {
      if (f[a.successor[s][d]] != b.successor[f[s]][d]) return false;
    }
  }
  return true;
}

// Composite of two hom coalgebras: actions compose, successor states pair.
inline polytree::SetCoalgebra oracle_org_compose(const polytree::SetCoalgebra& a,
                                                 const polytree::SetCoalgebra& b,
                                                 const PolyCode& p, const PolyCode& q,
                                                 const PolyCode& r) {
  using namespace polytree;
  auto pq = enumerate_maps(p, q);
  auto qr = enumerate_maps(q, r);
  SetCoalgebra out;
  out.carrier = ihom_poly(p, r);
  out.states = a.states * b.states;
  out.position.resize(out.states);
  out.successor.resize(out.states);
  for (std::size_t s = 0; s < a.states; ++s) {
    for (std::size_t t = 0; t < b.states; ++t) {
      const PolyMap& f = pq[a.position[s]];
      const PolyMap& g = qr[b.position[t]];
      PolyMap h = compose_poly_maps(f, g);
      std::size_t st = s * b.states + t;
      out.position[st] = to_size_t(poly_map_rank(h));
      out.successor[st].resize(ihom_dir_count(h));
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::size_t j = f.on_pos(i);
        std::size_t kk = g.on_pos(j);
        for (std::size_t ff = 0; ff < r.dirs(kk); ++ff) {
          std::size_t e = g.on_dir(j, ff);
          std::size_t s2 = a.successor[s][ihom_dir_flat(f, i, e)];
          std::size_t t2 = b.successor[t][ihom_dir_flat(g, j, ff)];
          out.successor[st][ihom_dir_flat(h, i, ff)] = s2 * b.states + t2;
        }
      }
    }
  }
  return out;
}

// Hom-tower count computed by enumerating root maps with oracle_all_maps
// and multiplying per-direction child counts.
inline Count oracle_hom_count(const Tree& p, const Tree& q, std::size_t depth) {
  if (depth == 0) return 1;
  Count total = 0;
  for (const MapTable& t : oracle_all_maps(p.root(), q.root())) {
    Count block = 1;
    for (std::size_t i = 0; i < t.first.size() && block != 0; ++i) {
      std::size_t j = t.first[i];
      for (std::size_t e = 0; e < q.root().dirs(j) && block != 0; ++e) {
        std::size_t d = t.second[i][e];
        block *= oracle_hom_count(p.child(i, d), q.child(j, e), depth - 1);
      }
    }
    total += block;
  }
  return total;
}

}  // namespace oracles

#include "polytree/laws.hpp"

#include "polytree/coalgebra.hpp"
#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/machine.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace polytree {

namespace {

struct LawFailure {
  std::string message;
};

void expect(bool ok, const std::string& message) {
  if (!ok) throw LawFailure{message};
}

struct Ctx {
  LawConfig cfg;
  Budget budget;
  std::vector<PolyCode> polys;  // 0, 1, y, y+1, y^2, y^2+1
  std::vector<Tree> trees;      // small morphism-level fixtures
  std::mt19937 rng{0};
};

std::string nm(const Tree& t) { return t.root().describe(); }

// ---- poly suites -----------------------------------------------------

void poly_map_count_suite(Ctx& c) {
  Budget small{std::min<std::uint64_t>(c.cfg.budget, 10'000)};
  for (const PolyCode& p : c.polys) {
    for (const PolyCode& q : c.polys) {
      Count closed = poly_map_count(p, q);
      auto maps = enumerate_maps(p, q, small);
      expect(Count(maps.size()) == closed,
             "map count mismatch for " + p.describe() + " -> " + q.describe());
    }
  }
}

void poly_category_suite(Ctx& c) {
  for (const PolyCode& p : c.polys) {
    for (const PolyCode& q : c.polys) {
      for (const PolyMap& f : enumerate_maps(p, q, c.budget)) {
        expect(compose_poly_maps(identity_poly_map(p), f) == f, "left identity fails");
        expect(compose_poly_maps(f, identity_poly_map(q)) == f, "right identity fails");
      }
    }
  }
  for (const PolyCode& p : c.polys) {
    for (const PolyCode& q : c.polys) {
      auto fs = enumerate_maps(p, q, c.budget);
      if (fs.empty()) continue;
      for (const PolyCode& r : c.polys) {
        auto gs = enumerate_maps(q, r, c.budget);
        if (gs.empty()) continue;
        for (const PolyCode& s : c.polys) {
          auto hs = enumerate_maps(r, s, c.budget);
          for (const PolyMap& f : fs) {
            for (const PolyMap& g : gs) {
              for (const PolyMap& h : hs) {
                expect(compose_poly_maps(compose_poly_maps(f, g), h) ==
                           compose_poly_maps(f, compose_poly_maps(g, h)),
                       "associativity fails");
              }
            }
          }
        }
      }
    }
  }
}

void poly_ihom_suite(Ctx& c) {
  for (const PolyCode& p : c.polys) {
    for (const PolyCode& q : c.polys) {
      PolyCode h = ihom_poly(p, q, c.budget);
      auto maps = enumerate_maps(p, q, c.budget);
      expect(h.size() == maps.size(), "internal hom position count differs from the map count");
      for (std::size_t k = 0; k < maps.size(); ++k) {
        expect(h.dirs(k) == ihom_dir_count(maps[k]), "internal hom direction count mismatch");
        expect(ihom_position_map(p, q, k) == maps[k], "position does not decode to the map");
        expect(poly_map_rank(maps[k]) == Count(k), "map rank disagrees with enumeration order");
      }
    }
  }
}

void poly_tensor_functorial_suite(Ctx& c) {
  const PolyCode& b = c.polys[3];   // y+1
  const PolyCode& w = c.polys[5];   // y^2+1
  auto fs = enumerate_maps(b, b, c.budget);
  auto gs = enumerate_maps(w, w, c.budget);
  expect(tensor_map(identity_poly_map(b), identity_poly_map(w)) ==
             identity_poly_map(tensor_poly(b, w, c.budget)),
         "tensor of identities is not the identity");
  for (const PolyMap& f : fs) {
    for (const PolyMap& f2 : gs) {
      for (const PolyMap& g : fs) {
        for (const PolyMap& g2 : gs) {
          expect(compose_poly_maps(tensor_map(f, f2), tensor_map(g, g2)) ==
                     tensor_map(compose_poly_maps(f, g), compose_poly_maps(f2, g2)),
                 "tensor functoriality fails");
        }
      }
    }
  }
}

void poly_code_realize_suite(Ctx& c) {
  for (const PolyCode& p : c.polys) {
    UniverseCode code = code_of(p);
    PolyCode back = realize(code);
    expect(back.same_shape(p), "realize(code_of(p)) changes the shape");
    for (const auto& entry : back.positions()) {
      expect(!entry.label && !entry.dir_labels, "realize must erase labels");
    }
    expect(code_of(back) == code, "code round trip fails");
  }
  UniverseCode sample{3, {1, 1, 0}};
  expect(code_of(realize(sample)) == sample, "code_of(realize(c)) != c");
  expect(realize(UniverseCode{0, {}}).size() == 0, "realize of the empty code");
}

// ---- tree suites -----------------------------------------------------

void tree_truncation_suite(Ctx& c) {
  std::vector<Tree> ts = c.trees;
  ts.push_back(ihom_tree(c.trees[2], c.trees[2], c.budget));  // a lazy fixture
  ts.push_back(unfold_tree(std::size_t{0}, [](std::size_t k) {
    PolyCode code = k % 2 == 0 ? PolyCode::from_dirs({1, 0}) : PolyCode::from_dirs({2});
    return std::pair{code, std::function<std::size_t(std::size_t, std::size_t)>(
                               [k](std::size_t, std::size_t) { return k + 1; })};
  }));
  std::size_t top = std::min<std::size_t>(4, c.cfg.depth + 1);
  for (const Tree& t : ts) {
    TruncTree deep = truncate(t, top, c.budget);
    for (std::size_t m = 0; m <= top; ++m) {
      expect(restrict_depth(deep, m) == truncate(t, m, c.budget),
             "truncation tower incoherent for " + nm(t));
    }
  }
}

void tree_bisimulation_suite(Ctx& c) {
  const auto& ts = c.trees;
  std::size_t top = std::min<std::size_t>(4, c.cfg.depth + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<std::vector<bool>> rel(ts.size(), std::vector<bool>(ts.size()));
    for (std::size_t a = 0; a < ts.size(); ++a) {
      for (std::size_t b = 0; b < ts.size(); ++b) {
        rel[a][b] = bisimilar(ts[a], ts[b], n, c.budget);
      }
    }
    for (std::size_t a = 0; a < ts.size(); ++a) {
      expect(rel[a][a], "bounded bisimilarity is not reflexive");
      for (std::size_t b = 0; b < ts.size(); ++b) {
        expect(rel[a][b] == rel[b][a], "bounded bisimilarity is not symmetric");
        for (std::size_t d = 0; d < ts.size(); ++d) {
          if (rel[a][b] && rel[b][d]) expect(rel[a][d], "bounded bisimilarity is not transitive");
        }
      }
    }
  }
  for (const Tree& a : ts) {
    for (const Tree& b : ts) {
      bool exact = bisimilar(a, b);
      if (exact) {
        for (std::size_t n = 0; n <= 8; ++n) {
          expect(bisimilar(a, b, n, c.budget), "exact bisimilarity contradicts a truncation");
        }
      } else {
        bool separated = false;
        for (std::size_t n = 0; n <= 8 && !separated; ++n) {
          separated = !bisimilar(a, b, n, c.budget);
        }
        expect(separated, "inequivalent trees agree on all tested truncations");
      }
    }
  }
}

void tree_tensor_strict_suite(Ctx& c) {
  for (const PolyCode& p : c.polys) {
    for (const PolyCode& q : c.polys) {
      Tree lhs = tensor_tree(constant_tree(p), constant_tree(q), c.budget);
      Tree rhs = constant_tree(tensor_poly(p, q, c.budget));
      expect(structurally_equal(lhs, rhs),
             "tensor of constant trees is not strictly constant for " + p.describe() + ", " +
                 q.describe());
    }
  }
}

void tree_strategy_suite(Ctx& c) {
  std::vector<Tree> ts;
  for (std::size_t h = 1; h <= 5; ++h) ts.push_back(nim_tree({h, {1, 2}}));
  ts.push_back(nim_with_outcomes({3, {1, 2}}));
  ts.push_back(constant_tree(PolyCode::zero()));
  ts.push_back(constant_tree(PolyCode::one()));
  ts.push_back(constant_tree(PolyCode::y()));
  Tree unit = constant_tree(PolyCode::y());
  for (const Tree& t : ts) {
    auto w1 = from_y_witness(t);
    expect(w1.has_value() == exists_map_from_y(t), "witness existence disagrees with decision");
    if (w1) {
      expect(bool(validate_machine(*w1)), "strategy witness machine is invalid");
      for (std::size_t depth = 0; depth <= 4; ++depth) {
        TruncMorphism f = unfold_machine(*w1, depth);
        expect(bool(validate_trunc(f, w1->source(), t, depth)), "witness unfolding is invalid");
      }
    }
    auto w2 = to_y_witness(t);
    expect(w2.has_value() == exists_map_to_y(t), "witness existence disagrees with decision");
    if (w2) {
      expect(bool(validate_machine(*w2)), "response witness machine is invalid");
      for (std::size_t depth = 0; depth <= 4; ++depth) {
        TruncMorphism f = unfold_machine(*w2, depth);
        expect(bool(validate_trunc(f, t, unit, depth)), "response unfolding is invalid");
      }
    }
  }
}

void tree_game_oracle_suite(Ctx&) {
  for (std::vector<std::size_t> takes : {std::vector<std::size_t>{1, 2},
                                         std::vector<std::size_t>{1, 2, 3}}) {
    for (std::size_t h = 1; h <= 9; ++h) {
      NimRule rule{h, takes};
      Tree t = nim_tree(rule);
      expect(exists_map_from_y(t) == nim_first_player_wins(rule),
             "strategy decision disagrees with the game oracle at heap " + std::to_string(h));
      expect(exists_map_to_y(t) == nim_responder_survives(rule),
             "response decision disagrees with the game oracle at heap " + std::to_string(h));
    }
  }
}

// ---- tree-morphism suites ---------------------------------------------

std::vector<TruncMorphism> sample_or_all(Ctx& c, const Tree& p, const Tree& q,
                                         std::size_t depth) {
  Count n = trunc_hom_count(p, q, depth);
  if (n == 0) return {};
  if (n <= Count(c.cfg.exhaustive_limit)) return enumerate_trunc_homs(p, q, depth, c.budget);
  std::vector<TruncMorphism> out;
  out.reserve(c.cfg.samples);
  for (std::size_t k = 0; k < c.cfg.samples; ++k) {
    out.push_back(sample_trunc_hom(p, q, depth, c.rng, c.budget));
  }
  return out;
}

void hom_category_suite(Ctx& c) {
  std::size_t depth = std::min<std::size_t>(4, c.cfg.depth);
  for (const Tree& p : c.trees) {
    for (const Tree& q : c.trees) {
      for (const TruncMorphism& f : sample_or_all(c, p, q, depth)) {
        expect(compose_trunc(id_trunc(p, depth), f) == f, "left identity fails");
        expect(compose_trunc(f, id_trunc(q, depth)) == f, "right identity fails");
      }
    }
  }
  std::vector<Tree> small(c.trees.begin(), c.trees.begin() + 4);
  for (const Tree& a : small) {
    for (const Tree& b : small) {
      auto fs = sample_or_all(c, a, b, depth);
      if (fs.empty()) continue;
      for (const Tree& d : small) {
        auto gs = sample_or_all(c, b, d, depth);
        if (gs.empty()) continue;
        for (const Tree& e : small) {
          auto hs = sample_or_all(c, d, e, depth);
          for (const auto& f : fs) {
            for (const auto& g : gs) {
              for (const auto& h : hs) {
                expect(compose_trunc(compose_trunc(f, g), h) ==
                           compose_trunc(f, compose_trunc(g, h)),
                       "associativity fails");
              }
            }
          }
        }
      }
    }
  }
}

void hom_projection_suite(Ctx& c) {
  std::size_t n = std::min<std::size_t>(3, c.cfg.depth);
  const Tree& b = c.trees[2];
  const Tree& s = c.trees[3];
  // identity
  expect(restrict_depth(id_trunc(b, n + 1), n) == id_trunc(b, n), "identity projection fails");
  // composition
  auto fs = enumerate_trunc_homs(b, s, n + 1, c.budget);
  auto gs = enumerate_trunc_homs(s, b, n + 1, c.budget);
  for (const auto& f : fs) {
    for (const auto& g : gs) {
      expect(restrict_depth(compose_trunc(f, g), n) ==
                 compose_trunc(restrict_depth(f, n), restrict_depth(g, n)),
             "composition projection fails");
      expect(restrict_depth(tensor_trunc(f, g), n) ==
                 tensor_trunc(restrict_depth(f, n), restrict_depth(g, n)),
             "tensor projection fails");
    }
  }
  // copair
  auto as = enumerate_trunc_homs(c.trees[0], b, n + 1, c.budget);
  auto bs = enumerate_trunc_homs(c.trees[1], b, n + 1, c.budget);
  for (const auto& f : as) {
    for (const auto& g : bs) {
      expect(restrict_depth(copair_trunc(f, g), n) ==
                 copair_trunc(restrict_depth(f, n), restrict_depth(g, n)),
             "copair projection fails");
    }
  }
  // curry
  Tree rp = tensor_tree(c.trees[0], b, c.budget);
  for (const auto& f : enumerate_trunc_homs(rp, b, n + 1, c.budget)) {
    expect(restrict_depth(curry_trunc(f, c.trees[0], b, b, c.budget), n) ==
               curry_trunc(restrict_depth(f, n), c.trees[0], b, b, c.budget),
           "curry projection fails");
  }
}

TruncMorphism decode_behavior(const BehaviorTrunc& b, const Tree& p, const Tree& q) {
  TruncMorphism out;
  out.depth = b.depth;
  if (b.depth == 0) return out;
  PolyMap f = ihom_position_map(p.root(), q.root(), *b.position);
  out.children.resize(p.root().size());
  for (std::size_t i = 0; i < p.root().size(); ++i) {
    std::size_t j = f.on_pos(i);
    out.children[i].resize(q.root().dirs(j));
    for (std::size_t e = 0; e < q.root().dirs(j); ++e) {
      std::size_t flat = ihom_dir_flat(f, i, e);
      out.children[i][e] =
          decode_behavior(b.children[flat], p.child(i, f.on_dir(i, e)), q.child(j, e));
    }
  }
  out.root_map = std::move(f);
  return out;
}

void hom_ihom_tree_suite(Ctx& c) {
  std::size_t top = std::min<std::size_t>(3, c.cfg.depth);
  std::vector<std::pair<Tree, Tree>> pairs = {
      {c.trees[0], c.trees[0]}, {c.trees[2], c.trees[2]}, {c.trees[0], c.trees[2]},
      {c.trees[2], c.trees[1]}, {c.trees[3], c.trees[2]},
  };
  for (const auto& [p, q] : pairs) {
    Tree h = ihom_tree(p, q, c.budget);
    for (std::size_t n = 0; n <= top; ++n) {
      expect(behavior_count(h, n, c.budget) == trunc_hom_count(p, q, n),
             "internal hom positions do not count the morphisms");
      auto behaviors = enumerate_behaviors(h, n, c.budget);
      auto homs = enumerate_trunc_homs(p, q, n, c.budget);
      expect(behaviors.size() == homs.size(), "enumeration sizes differ");
      for (std::size_t k = 0; k < homs.size(); ++k) {
        expect(decode_behavior(behaviors[k], p, q) == homs[k],
               "canonical bijection breaks at index " + std::to_string(k));
      }
    }
  }
}

void hom_constant_count_suite(Ctx& c) {
  std::size_t top = std::min<std::size_t>(3, c.cfg.depth);
  std::vector<PolyCode> ps = {PolyCode::y(), PolyCode::from_dirs({1, 0}),
                              PolyCode::from_dirs({2, 0})};
  for (const PolyCode& p : ps) {
    for (const PolyCode& q : ps) {
      Tree tp = constant_tree(p);
      Tree tq = constant_tree(q);
      PolyCode h = ihom_poly(p, q, c.budget);
      for (std::size_t n = 0; n <= top; ++n) {
        expect(trunc_hom_count(tp, tq, n) == cofree_count(h, n),
               "constant-tree hom tower differs from the cofree tower for " + p.describe() +
                   " -> " + q.describe());
      }
    }
  }
}

void hom_pentagon_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  const Tree& y = c.trees[0];
  const Tree& one = c.trees[1];
  const Tree& b = c.trees[2];
  const Tree& s = c.trees[3];
  const Tree& game = c.trees[4];
  std::vector<std::array<Tree, 4>> tuples = {{y, one, b, y},
                                             {b, b, b, b},
                                             {y, b, one, s},
                                             {b, one, y, b},
                                             {s, y, b, one},
                                             {game, y, b, one},
                                             {one, game, s, y}};
  for (const auto& [p, q, r, t] : tuples) {
    Tree qr = tensor_tree(q, r, c.budget);
    Tree pq = tensor_tree(p, q, c.budget);
    Tree rt = tensor_tree(r, t, c.budget);
    TruncMorphism lhs = compose_trunc(
        compose_trunc(tensor_trunc(assoc_trunc(p, q, r, d, c.budget), id_trunc(t, d)),
                      assoc_trunc(p, qr, t, d, c.budget)),
        tensor_trunc(id_trunc(p, d), assoc_trunc(q, r, t, d, c.budget)));
    TruncMorphism rhs = compose_trunc(assoc_trunc(pq, r, t, d, c.budget),
                                      assoc_trunc(p, q, rt, d, c.budget));
    expect(lhs == rhs, "pentagon fails");
  }
}

void hom_triangle_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  const Tree& y = c.trees[0];
  for (const Tree& p : c.trees) {
    for (const Tree& q : c.trees) {
      TruncMorphism lhs = compose_trunc(assoc_trunc(p, y, q, d, c.budget),
                                        tensor_trunc(id_trunc(p, d), left_unit_trunc(q, d, c.budget)));
      TruncMorphism rhs = tensor_trunc(right_unit_trunc(p, d, c.budget), id_trunc(q, d));
      expect(lhs == rhs, "triangle fails for " + nm(p) + ", " + nm(q));
    }
  }
}

void hom_hexagon_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  std::vector<std::array<Tree, 3>> tuples = {
      {c.trees[0], c.trees[2], c.trees[1]},
      {c.trees[2], c.trees[2], c.trees[3]},
      {c.trees[3], c.trees[0], c.trees[2]},
      {c.trees[4], c.trees[2], c.trees[0]},
  };
  for (const auto& [p, q, r] : tuples) {
    Tree qr = tensor_tree(q, r, c.budget);
    TruncMorphism route1 =
        compose_trunc(compose_trunc(assoc_trunc(p, q, r, d, c.budget),
                                    braid_trunc(p, qr, d, c.budget)),
                      assoc_trunc(q, r, p, d, c.budget));
    TruncMorphism route2 = compose_trunc(
        compose_trunc(tensor_trunc(braid_trunc(p, q, d, c.budget), id_trunc(r, d)),
                      assoc_trunc(q, p, r, d, c.budget)),
        tensor_trunc(id_trunc(q, d), braid_trunc(p, r, d, c.budget)));
    expect(route1 == route2, "hexagon fails");
    TruncMorphism invol = compose_trunc(braid_trunc(p, q, d, c.budget),
                                        braid_trunc(q, p, d, c.budget));
    expect(invol == id_trunc(tensor_tree(p, q, c.budget), d), "braid is not an involution");
  }
}

void hom_distrib_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  std::vector<std::array<Tree, 3>> tuples = {
      {c.trees[0], c.trees[0], c.trees[1]},
      {c.trees[2], c.trees[0], c.trees[2]},
      {c.trees[3], c.trees[1], c.trees[0]},
  };
  for (const auto& [p, q, r] : tuples) {
    Tree lhs_tree = tensor_tree(p, sum_tree(q, r), c.budget);
    Tree rhs_tree = sum_tree(tensor_tree(p, q, c.budget), tensor_tree(p, r, c.budget));
    TruncMorphism fwd = distrib_trunc(p, q, r, d, c.budget);
    TruncMorphism bwd = distrib_inv_trunc(p, q, r, d, c.budget);
    expect(bool(validate_trunc(fwd, lhs_tree, rhs_tree, d)), "distributivity map is invalid");
    expect(bool(validate_trunc(bwd, rhs_tree, lhs_tree, d)), "inverse map is invalid");
    expect(compose_trunc(fwd, bwd) == id_trunc(lhs_tree, d), "distributivity is not split");
    expect(compose_trunc(bwd, fwd) == id_trunc(rhs_tree, d), "distributivity is not an iso");
    for (const auto& row : fwd.children) {
      for (const auto& child : row) {
        if (child.depth > 0) {
          expect(*child.root_map == identity_poly_map(child.root_map->source()),
                 "distributivity children must be identities");
        }
      }
    }
  }
}

void hom_closure_suite(Ctx& c) {
  std::size_t top = std::min<std::size_t>(3, c.cfg.depth);
  Tree login = login_tree(1, 1);
  std::vector<std::array<Tree, 3>> triples = {
      {c.trees[0], c.trees[2], c.trees[2]},
      {c.trees[2], c.trees[0], c.trees[2]},
      {c.trees[0], login, login},
  };
  for (const auto& [r, p, q] : triples) {
    Tree rp = tensor_tree(r, p, c.budget);
    Tree h = ihom_tree(p, q, c.budget);
    for (std::size_t n = 0; n <= top; ++n) {
      Count lhs = trunc_hom_count(rp, q, n);
      Count rhs = trunc_hom_count(r, h, n);
      expect(lhs == rhs, "closure counts differ at depth " + std::to_string(n));
      if (lhs <= Count(c.cfg.exhaustive_limit)) {
        auto fs = enumerate_trunc_homs(rp, q, n, c.budget);
        for (const auto& f : fs) {
          TruncMorphism g = curry_trunc(f, r, p, q, c.budget);
          expect(bool(validate_trunc(g, r, h, n)), "curried morphism is invalid");
          expect(uncurry_trunc(g, r, p, q, c.budget) == f, "uncurry(curry(f)) != f");
        }
        auto gs = enumerate_trunc_homs(r, h, n, c.budget);
        expect(gs.size() == fs.size(), "enumerated closure sizes differ");
        for (const auto& g : gs) {
          TruncMorphism f = uncurry_trunc(g, r, p, q, c.budget);
          expect(bool(validate_trunc(f, rp, q, n)), "uncurried morphism is invalid");
          expect(curry_trunc(f, r, p, q, c.budget) == g, "curry(uncurry(g)) != g");
        }
      } else {
        for (std::size_t k = 0; k < c.cfg.samples; ++k) {
          TruncMorphism f = sample_trunc_hom(rp, q, n, c.rng, c.budget);
          expect(uncurry_trunc(curry_trunc(f, r, p, q, c.budget), r, p, q, c.budget) == f,
                 "sampled closure round trip fails");
        }
      }
    }
  }
}

void hom_coproduct_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  std::vector<std::array<Tree, 3>> tuples = {
      {c.trees[0], c.trees[1], c.trees[2]},
      {c.trees[2], c.trees[3], c.trees[2]},
  };
  for (const auto& [p, q, r] : tuples) {
    Tree sum = sum_tree(p, q);
    TruncMorphism i1 = injection_trunc(p, q, 0, d);
    TruncMorphism i2 = injection_trunc(p, q, 1, d);
    expect(bool(validate_trunc(i1, p, sum, d)), "first injection invalid");
    expect(bool(validate_trunc(i2, q, sum, d)), "second injection invalid");
    expect(copair_trunc(i1, i2) == id_trunc(sum, d), "copair of injections is not the identity");
    auto fs = enumerate_trunc_homs(p, r, d, c.budget);
    auto gs = enumerate_trunc_homs(q, r, d, c.budget);
    for (const auto& f : fs) {
      for (const auto& g : gs) {
        TruncMorphism cp = copair_trunc(f, g);
        expect(bool(validate_trunc(cp, sum, r, d)), "copair invalid");
        expect(compose_trunc(i1, cp) == f, "copair does not restrict to the first component");
        expect(compose_trunc(i2, cp) == g, "copair does not restrict to the second component");
      }
    }
  }
  Tree zero = constant_tree(PolyCode::zero());
  for (const Tree& q : c.trees) {
    for (std::size_t n = 0; n <= 4; ++n) {
      expect(trunc_hom_count(zero, q, n) == 1, "the empty tree is not initial");
    }
  }
}

void hom_constant_functor_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  const PolyCode& b = c.polys[3];
  const PolyCode& w = c.polys[5];
  expect(constant_trunc(identity_poly_map(b), d) == id_trunc(constant_tree(b), d),
         "constant of the identity is not the identity");
  for (const PolyMap& f : enumerate_maps(b, w, c.budget)) {
    expect(*constant_trunc(f, d).root_map == f, "root retraction does not recover the map");
    for (const PolyMap& g : enumerate_maps(w, b, c.budget)) {
      expect(constant_trunc(compose_poly_maps(f, g), d) ==
                 compose_trunc(constant_trunc(f, d), constant_trunc(g, d)),
             "constant functor does not respect composition");
    }
  }
}

void hom_sum_not_preserved_suite(Ctx& c) {
  Tree lhs = sum_tree(constant_tree(PolyCode::y()), constant_tree(PolyCode::one()));
  Tree rhs = constant_tree(PolyCode::from_dirs({1, 0}));
  expect(bisimilar(lhs, rhs, 1, c.budget), "the sum and the constant agree at the root");
  expect(!bisimilar(lhs, rhs, 2, c.budget),
         "constant trees must not preserve sums (witness expected at depth 2)");
}

// ---- machine suites ----------------------------------------------------

std::vector<SetCoalgebra> all_coalgebras(const PolyCode& h, std::size_t states) {
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
  std::vector<SetCoalgebra> out;
  std::vector<std::size_t> pick(states, 0);
  while (true) {
    SetCoalgebra b;
    b.carrier = h;
    b.states = states;
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

bool coalgebra_morphism(const std::vector<std::size_t>& f, const SetCoalgebra& a,
                        const SetCoalgebra& b) {
  for (std::size_t s = 0; s < a.states; ++s) {
    if (b.position[f[s]] != a.position[s]) return false;
    for (std::size_t d = 0; d < a.successor[s].size(); ++d) {
      if (f[a.successor[s][d]] != b.successor[f[s]][d]) return false;
    }
  }
  return true;
}

SetCoalgebra org_compose(const SetCoalgebra& a, const SetCoalgebra& b, const PolyCode& p,
                         const PolyCode& q, const PolyCode& r, const Budget& budget) {
  auto pq = enumerate_maps(p, q, budget);
  auto qr = enumerate_maps(q, r, budget);
  SetCoalgebra out;
  out.carrier = ihom_poly(p, r, budget);
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
        std::size_t k = g.on_pos(j);
        for (std::size_t ff = 0; ff < r.dirs(k); ++ff) {
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

void org_unfold_functorial_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  PolyCode b = c.polys[3];
  PolyCode h = ihom_poly(b, b, c.budget);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);
  Tree tr = constant_tree(b);
  auto coalgs = all_coalgebras(h, 2);
  for (std::size_t x = 0; x < coalgs.size(); x += 2) {
    for (std::size_t y = 1; y < coalgs.size(); y += 3) {
      Machine m = embed_coalgebra(b, b, coalgs[x], tp, tq, c.budget);
      Machine n = embed_coalgebra(b, b, coalgs[y], tq, tr, c.budget);
      Machine mn = compose_machines(m, n);
      for (std::size_t k = 0; k <= d; ++k) {
        expect(unfold_machine(mn, k) ==
                   compose_trunc(unfold_machine(m, k), unfold_machine(n, k)),
               "unfolding is not functorial");
      }
    }
  }
  // identity on either side
  Machine m = embed_coalgebra(b, b, coalgs[1], tp, tq, c.budget);
  Machine idq = identity_machine(tq);
  expect(unfold_machine(compose_machines(m, idq), d) == unfold_machine(m, d),
         "composing with the identity changes the unfolding");
  Machine idp = identity_machine(tp);
  expect(unfold_machine(compose_machines(idp, m), d) == unfold_machine(m, d),
         "composing with the identity changes the unfolding");
  // a node-dependent machine composed with an identity
  Machine ro = readonly_refinement(2, 2);
  Machine post = identity_machine(ro.target());
  expect(unfold_machine(compose_machines(ro, post), d) == unfold_machine(ro, d),
         "node-dependent composition with identity fails");
}

void org_single_state_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(2, c.cfg.depth);
  const Tree& b = c.trees[2];
  for (const TruncMorphism& f : enumerate_trunc_homs(b, b, d, c.budget)) {
    Machine m = trunc_to_s1(f, b, b);
    expect(unfold_machine(m, d) == f, "machine round trip loses the morphism");
  }
  Machine ro = readonly_refinement(1, 1);
  TruncMorphism f = s1_to_trunc(ro, 3);
  Machine back = trunc_to_s1(f, ro.source(), ro.target());
  expect(unfold_machine(back, 3) == f, "single-state round trip fails");
  expect(unfold_machine(back, 2) == restrict_depth(f, 2), "tower projection fails");
}

void org_embedding_suite(Ctx& c) {
  std::size_t d = std::min<std::size_t>(3, c.cfg.depth);
  PolyCode b = c.polys[3];  // y+1
  PolyCode h = ihom_poly(b, b, c.budget);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);

  std::vector<SetCoalgebra> coalgs = all_coalgebras(h, 1);
  auto two = all_coalgebras(h, 2);
  coalgs.insert(coalgs.end(), two.begin(), two.end());

  for (const SetCoalgebra& a : coalgs) {
    Machine m = embed_coalgebra(b, b, a, tp, tq, c.budget);
    expect(bool(validate_machine(m)), "embedded machine invalid");
    expect(is_time_invariant(m), "embedded machine must be time-invariant");
    expect(retract_to_coalgebra(m, c.budget) == a, "retraction does not recover the coalgebra");
  }

  // machine maps = coalgebra morphisms, enumerated both ways
  for (const SetCoalgebra& a : coalgs) {
    for (const SetCoalgebra& bb : coalgs) {
      Machine ma = embed_coalgebra(b, b, a, tp, tq, c.budget);
      Machine mb = embed_coalgebra(b, b, bb, tp, tq, c.budget);
      std::vector<std::size_t> f(a.states, 0);
      while (true) {
        expect(check_machine_map(f, ma, mb) == coalgebra_morphism(f, a, bb),
               "machine maps disagree with coalgebra morphisms");
        std::size_t s = a.states;
        while (s > 0) {
          if (++f[s - 1] < bb.states) break;
          f[s - 1] = 0;
          --s;
        }
        if (s == 0) break;
      }
    }
  }

  // embedding respects composition
  Tree tr = constant_tree(b);
  for (std::size_t x = 0; x < two.size(); x += 3) {
    for (std::size_t y = 2; y < two.size(); y += 4) {
      SetCoalgebra comp = org_compose(two[x], two[y], b, b, b, c.budget);
      Machine lhs = compose_machines(embed_coalgebra(b, b, two[x], tp, tq, c.budget),
                                     embed_coalgebra(b, b, two[y], tq, tr, c.budget));
      Machine rhs = embed_coalgebra(b, b, comp, tp, tr, c.budget);
      for (std::size_t k = 0; k <= d; ++k) {
        expect(unfold_machine(lhs, k) == unfold_machine(rhs, k),
               "embedding does not respect composition");
      }
    }
  }

  // negatives: a node-dependent action is not time-invariant
  FiniteTreeData unrolled;
  unrolled.root = 0;
  unrolled.code = {b, b};
  unrolled.next = {{{1}, {}}, {{1}, {}}};
  Tree two_node = Tree::finite(std::move(unrolled));
  auto maps = enumerate_maps(b, b, c.budget);
  Machine dependent = Machine::finite(
      two_node, two_node, 1, 0,
      [maps](std::size_t, const Tree& pn, const Tree&) { return maps[pn.node() == 0 ? 0 : 1]; },
      [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 0;
      });
  expect(bool(validate_machine(dependent)), "node-dependent machine should validate");
  expect(!is_time_invariant(dependent), "node-dependent action must not be time-invariant");

  // a state-alternating machine is still time-invariant
  Machine phase = Machine::finite(
      tp, tq, 2, 0,
      [maps](std::size_t s, const Tree&, const Tree&) { return maps[s]; },
      [](std::size_t s, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 1 - s;
      });
  expect(is_time_invariant(phase), "state-dependent alternation is time-invariant");
}

void org_validity_suite(Ctx& c) {
  PolyCode b = c.polys[3];
  PolyCode h = ihom_poly(b, b, c.budget);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);
  Tree tr = constant_tree(b);
  auto coalgs = all_coalgebras(h, 2);
  Machine m = embed_coalgebra(b, b, coalgs[2], tp, tq, c.budget);
  Machine n = embed_coalgebra(b, b, coalgs[5], tq, tr, c.budget);
  expect(bool(validate_machine(identity_machine(c.trees[3]))), "identity machine invalid");
  expect(bool(validate_machine(m)) && bool(validate_machine(n)), "embedded machines invalid");
  expect(bool(validate_machine(compose_machines(m, n))), "composite machine invalid");
  expect(bool(validate_machine(compose_machines(m, identity_machine(tq)))),
         "composite with identity invalid");
}

// ---- fixture suites ----------------------------------------------------

void fixture_machines_suite(Ctx& c) {
  // every fixture tree is a valid finite presentation
  for (const Tree& t : {login_tree(), readonly_tree(), cell_tree(), nim_tree({5, {1, 2}}),
                        nim_with_outcomes({5, {1, 2}}), progressive_tree(ProgressiveConfig{})}) {
    validate(*t.finite_data());
  }

  // protocol refinement
  Machine ro = readonly_refinement();
  expect(bool(validate_machine(ro)), "refinement machine invalid");
  TruncMorphism f = unfold_machine(ro, 6);
  expect(bool(validate_trunc(f, ro.source(), ro.target(), 6)),
         "refinement does not validate to depth 6");
  for (const ReachableTriple& t : reachable_triples(ro)) {
    PolyMap a = ro.act(t.state, t.pn, t.qn);
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      const auto& entry = t.qn.root().at(a.on_pos(i));
      expect(!entry.label || entry.label->rfind("set:", 0) != 0,
             "refinement action reaches a write position");
    }
  }

  // protocol shape
  Tree login = login_tree();
  expect(login.root().same_shape(PolyCode::from_dirs({2, 0})), "login root is not y^2+1");
  expect(login.child(0, 0).root().size() == 7, "authenticated interface size");
  expect(same_handle(login.child(0, 1), login), "failed login must retry at the root");

  // cells and the organ
  Tree cell = cell_tree();
  std::size_t L = 2;
  expect(cell.root().same_shape(PolyCode::monomial(L, L * L * L)), "cell root shape");
  expect(bisimilar(cell.child(0, (L - 1)), constant_tree(PolyCode::zero()), 3, c.budget),
         "a maximal third receptor must kill the cell");
  std::size_t growth_dir = 0;  // all receptors low
  expect(bisimilar(cell.child(0, growth_dir), cell), "the growth child is the cell itself");
  Machine organ = organ_machine();
  expect(bool(validate_machine(organ)), "organ machine invalid");
  const Tree triple = organ.source();
  expect(triple.root().same_shape(PolyCode::monomial(L * L * L, 512)),
         "threefold tensor root shape");
  TruncMorphism g = unfold_machine(organ, 6);
  expect(bool(validate_trunc(g, organ.source(), organ.target(), 6)),
         "organ machine does not validate to depth 6");

  // outcome variant
  Tree outcomes = nim_with_outcomes({3, {1, 2}});
  expect(outcomes.root().size() == 3, "outcome root must add one position");
  expect(exists_map_from_y(outcomes), "a strategy always exists with explicit outcomes");
}

void fixture_progressive_suite(Ctx&) {
  ProgressiveConfig cfg;
  const std::size_t steps = 40;
  ProgressiveTrajectory t1 = progressive_demo(cfg, steps);
  ProgressiveTrajectory t2 = progressive_demo(cfg, steps);
  expect(t1.steps.size() == steps && t2.steps.size() == steps, "trajectory length");

  const std::size_t k = cfg.latent_dim;
  const std::size_t last = cfg.resolutions.size() - 1;
  std::vector<double> wg = initial_generator_weights(cfg);
  std::vector<double> wd = initial_discriminator_weights(cfg);
  std::size_t level = 0;
  for (std::size_t s = 0; s < steps; ++s) {
    const ProgressiveStep& a = t1.steps[s];
    const ProgressiveStep& b = t2.steps[s];
    expect(a.level == b.level && a.latent == b.latent && a.position == b.position &&
               a.direction == b.direction && a.out_direction == b.out_direction &&
               a.grew == b.grew && a.gen_weights == b.gen_weights &&
               a.disc_weights == b.disc_weights,
           "trajectory is not deterministic");

    expect(a.level == level, "level bookkeeping broke");
    std::size_t n = cfg.resolutions[level];
    std::vector<double> z = decode_signal(cfg, k, a.latent);
    std::vector<double> x(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t cc = 0; cc < k; ++cc) x[r] += wg[r * k + cc] * z[cc];
    }
    expect(encode_signal(cfg, x) == a.position, "forward pass mismatch");
    double u = decode_signal(cfg, 1, a.out_direction)[0];
    std::vector<double> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = wd[r] * u;
    expect(encode_signal(cfg, v) == a.direction, "backward pass mismatch");

    std::vector<double> cot = decode_signal(cfg, n, a.direction);
    double sup = 0;
    for (double w : cot) sup = std::max(sup, std::abs(w));
    bool grow = level < last && sup <= cfg.threshold;
    expect(a.grew == grow, "growth disagrees with the cotangent partition");
    expect(a.level_after == level + (grow ? 1 : 0), "level transition mismatch");

    // independent updates with the same routed signals
    std::vector<double> img = decode_signal(cfg, n, a.position);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t cc = 0; cc < k; ++cc) {
        wg[r * k + cc] += cfg.learning_rate * cot[r] * z[cc];
      }
    }
    for (std::size_t r = 0; r < n; ++r) wd[r] -= cfg.learning_rate * u * img[r];
    expect(wg == a.gen_weights, "composite generator state differs from the independent run");
    expect(wd == a.disc_weights, "composite discriminator state differs from the independent run");
    level = a.level_after;
  }

  // closed-form ascent step against a finite-difference derivative
  const ProgressiveStep& a = t1.steps[0];
  std::vector<double> z = decode_signal(cfg, k, a.latent);
  std::vector<double> cot = decode_signal(cfg, cfg.resolutions[0], a.direction);
  std::vector<double> w0 = initial_generator_weights(cfg);
  std::size_t n0 = cfg.resolutions[0];
  for (std::size_t r = 0; r < n0; ++r) {
    for (std::size_t cc = 0; cc < k; ++cc) {
      const double h = 1e-6;
      auto loss = [&](double delta) {
        double acc = 0;
        for (std::size_t rr = 0; rr < n0; ++rr) {
          double out = 0;
          for (std::size_t c2 = 0; c2 < k; ++c2) {
            double wv = w0[rr * k + c2] + (rr == r && c2 == cc ? delta : 0.0);
            out += wv * z[c2];
          }
          acc += cot[rr] * out;
        }
        return acc;
      };
      double numeric = (loss(h) - loss(-h)) / (2 * h);
      expect(std::abs(numeric - cot[r] * z[cc]) <= 1e-6,
             "finite-difference derivative disagrees with the closed form");
    }
  }
}

}  // namespace

std::vector<LawResult> run_law_suites(const LawConfig& config) {
  Ctx ctx;
  ctx.cfg = config;
  ctx.budget = Budget{config.budget};
  ctx.polys = {PolyCode::zero(),          PolyCode::one(),
               PolyCode::y(),             PolyCode::from_dirs({1, 0}),
               PolyCode::from_dirs({2}),  PolyCode::from_dirs({2, 0})};
  ctx.trees = {constant_tree(PolyCode::y()),
               constant_tree(PolyCode::one()),
               constant_tree(PolyCode::from_dirs({1, 0})),
               sum_tree(constant_tree(PolyCode::y()), constant_tree(PolyCode::one())),
               nim_tree({2, {1, 2}}),
               login_tree(1, 1)};

  const std::vector<std::pair<std::string, void (*)(Ctx&)>> suites = {
      {"poly/map-count", poly_map_count_suite},
      {"poly/category", poly_category_suite},
      {"poly/ihom-positions", poly_ihom_suite},
      {"poly/tensor-functorial", poly_tensor_functorial_suite},
      {"poly/code-realize", poly_code_realize_suite},
      {"tree/truncation-coherence", tree_truncation_suite},
      {"tree/bisimulation", tree_bisimulation_suite},
      {"tree/tensor-strict-constant", tree_tensor_strict_suite},
      {"tree/strategy-witnesses", tree_strategy_suite},
      {"tree/game-oracle", tree_game_oracle_suite},
      {"hom/category", hom_category_suite},
      {"hom/projection", hom_projection_suite},
      {"hom/ihom-tree-positions", hom_ihom_tree_suite},
      {"hom/constant-hom-counts", hom_constant_count_suite},
      {"hom/pentagon", hom_pentagon_suite},
      {"hom/triangle", hom_triangle_suite},
      {"hom/hexagon", hom_hexagon_suite},
      {"hom/distributivity", hom_distrib_suite},
      {"hom/closure", hom_closure_suite},
      {"hom/coproduct", hom_coproduct_suite},
      {"hom/constant-functor", hom_constant_functor_suite},
      {"hom/sum-not-preserved", hom_sum_not_preserved_suite},
      {"org/unfold-functorial", org_unfold_functorial_suite},
      {"org/single-state", org_single_state_suite},
      {"org/coalgebra-embedding", org_embedding_suite},
      {"org/validity", org_validity_suite},
      {"fixtures/machines", fixture_machines_suite},
      {"fixtures/progressive", fixture_progressive_suite},
  };

  std::vector<LawResult> results;
  results.reserve(suites.size());
  for (const auto& [name, body] : suites) {
    ctx.rng.seed(static_cast<std::uint32_t>(config.seed));
    LawResult r;
    r.name = name;
    try {
      body(ctx);
      r.status = LawStatus::pass;
    } catch (const LawFailure& f) {
      r.status = LawStatus::fail;
      r.detail = f.message;
    } catch (const BudgetError& b) {
      r.status = LawStatus::skip;
      r.detail = b.what();
    } catch (const std::exception& e) {
      r.status = LawStatus::fail;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace polytree

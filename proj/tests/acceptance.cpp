// Acceptance suite: one pass/fail line per criterion. Exits nonzero when
// any criterion fails. Expected values come from independent oracles
// (enumeration, game search, finite differences) or exact closed forms.

#include "polytree/coalgebra.hpp"
#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/json_io.hpp"
#include "polytree/laws.hpp"
#include "polytree/machine.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace polytree;

namespace {

struct CriterionFailure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CriterionFailure{message};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<PolyCode> poly_fixtures() {
  return {PolyCode::zero(),          PolyCode::one(),
          PolyCode::y(),             PolyCode::from_dirs({1, 0}),
          PolyCode::from_dirs({2}),  PolyCode::from_dirs({2, 0})};
}

// -- criterion 1: category and functor laws in the base category ---------

void poly_law_suite() {
  auto start = std::chrono::steady_clock::now();
  auto polys = poly_fixtures();

  require(enumerate_maps(PolyCode::from_dirs({1, 0}), PolyCode::from_dirs({1, 0})).size() == 2,
          "map count y+1 -> y+1 must be 2");
  require(enumerate_maps(PolyCode::from_dirs({2, 0}), PolyCode::from_dirs({2, 0})).size() == 5,
          "map count y^2+1 -> y^2+1 must be 5");
  require(oracles::oracle_all_maps(PolyCode::from_dirs({1, 0}), PolyCode::from_dirs({1, 0}))
                  .size() == 2,
          "oracle count y+1 -> y+1 must be 2");
  require(oracles::oracle_all_maps(PolyCode::from_dirs({2, 0}), PolyCode::from_dirs({2, 0}))
                  .size() == 5,
          "oracle count y^2+1 -> y^2+1 must be 5");

  for (const PolyCode& p : polys) {
    for (const PolyCode& q : polys) {
      auto fs = enumerate_maps(p, q);
      require(fs.size() == oracles::oracle_all_maps(p, q).size(),
              "enumeration disagrees with the oracle");
      for (const PolyMap& f : fs) {
        require(compose_poly_maps(identity_poly_map(p), f) == f, "left identity");
        require(compose_poly_maps(f, identity_poly_map(q)) == f, "right identity");
      }
      for (const PolyCode& r : polys) {
        auto gs = enumerate_maps(q, r);
        if (gs.empty() || fs.empty()) continue;
        for (const PolyCode& s : polys) {
          for (const PolyMap& h : enumerate_maps(r, s)) {
            for (const PolyMap& f : fs) {
              for (const PolyMap& g : gs) {
                require(compose_poly_maps(compose_poly_maps(f, g), h) ==
                            compose_poly_maps(f, compose_poly_maps(g, h)),
                        "associativity");
              }
            }
          }
        }
      }
    }
  }

  // tensor functoriality over the two-position fixtures
  const PolyCode b = PolyCode::from_dirs({1, 0});
  const PolyCode w = PolyCode::from_dirs({2, 0});
  for (const PolyMap& f : enumerate_maps(b, b)) {
    for (const PolyMap& f2 : enumerate_maps(w, w)) {
      for (const PolyMap& g : enumerate_maps(b, b)) {
        for (const PolyMap& g2 : enumerate_maps(w, w)) {
          require(compose_poly_maps(tensor_map(f, f2), tensor_map(g, g2)) ==
                      tensor_map(compose_poly_maps(f, g), compose_poly_maps(f2, g2)),
                  "tensor functoriality");
        }
      }
    }
  }
  require(seconds_since(start) < 10.0, "exceeded the 10 s limit");
}

// -- criterion 2: hom towers over constant trees count the cofree tower --

void hom_count_correspondence() {
  PolyCode b = PolyCode::from_dirs({1, 0});
  Tree tb = constant_tree(b);
  PolyCode hb = ihom_poly(b, b);
  const Count expected_b[] = {1, 2, 3, 4};
  for (std::size_t n = 0; n <= 3; ++n) {
    Count homs = trunc_hom_count(tb, tb, n);
    require(homs == cofree_count(hb, n), "tower disagrees with the cofree count");
    require(homs == expected_b[n], "tower count is not 1,2,3,4");
  }

  // the session-protocol root polynomial
  PolyCode w = PolyCode::from_dirs({2, 0});
  Tree tw = constant_tree(w);
  PolyCode hw = ihom_poly(w, w);
  const Count expected_w[] = {1, 5, 101};
  for (std::size_t n = 0; n <= 2; ++n) {
    Count homs = trunc_hom_count(tw, tw, n);
    require(homs == cofree_count(hw, n), "tower disagrees with the cofree count");
    require(homs == expected_w[n], "tower count is not 1,5,101");
  }
}

// -- criterion 3: the tensor-hom adjunction at every depth ----------------

void closure_adjunction() {
  Tree ty = constant_tree(PolyCode::y());
  Tree tb = constant_tree(PolyCode::from_dirs({1, 0}));
  Tree login = login_tree(1, 1);

  struct Triple {
    Tree r, p, q;
    std::size_t max_enumerated_depth;
  };
  std::vector<Triple> triples = {
      {ty, tb, tb, 3},
      {tb, ty, tb, 3},
      {ty, login, login, 3},
  };
  for (const Triple& t : triples) {
    Tree rp = tensor_tree(t.r, t.p);
    Tree h = ihom_tree(t.p, t.q);
    for (std::size_t n = 0; n <= 3; ++n) {
      Count lhs = trunc_hom_count(rp, t.q, n);
      Count rhs = trunc_hom_count(t.r, h, n);
      require(lhs == rhs, "hom set sizes differ across the adjunction");
      if (n > t.max_enumerated_depth) continue;
      Count verified = 0;
      for_each_trunc_hom(rp, t.q, n, [&](const TruncMorphism& f) {
        TruncMorphism g = curry_trunc(f, t.r, t.p, t.q);
        require(bool(validate_trunc(g, t.r, h, n)), "curried element invalid");
        require(uncurry_trunc(g, t.r, t.p, t.q) == f, "uncurry(curry(f)) != f");
        ++verified;
        return true;
      });
      require(Count(verified) == lhs, "did not visit every element");
      // and the other direction
      Count verified_back = 0;
      for_each_trunc_hom(t.r, h, n, [&](const TruncMorphism& g) {
        TruncMorphism f = uncurry_trunc(g, t.r, t.p, t.q);
        require(curry_trunc(f, t.r, t.p, t.q) == g, "curry(uncurry(g)) != g");
        ++verified_back;
        return true;
      });
      require(verified_back == verified, "asymmetric enumeration");
    }
  }

  // at the default protocol size only the root level stays enumerable;
  // the counts must still agree exactly
  Tree big = login_tree(3, 2);
  Tree rp = tensor_tree(ty, big);
  Tree h = ihom_tree(big, big);
  for (std::size_t n = 0; n <= 1; ++n) {
    require(trunc_hom_count(rp, big, n) == trunc_hom_count(ty, h, n),
            "root-level adjunction counts differ at full protocol size");
  }
}

// -- criterion 4: monoidal coherence -------------------------------------

void monoidal_coherence() {
  LawConfig cfg;
  cfg.depth = 3;
  auto results = run_law_suites(cfg);
  const std::set<std::string> wanted = {
      "hom/pentagon",      "hom/triangle",          "hom/hexagon",
      "hom/distributivity", "tree/tensor-strict-constant", "hom/sum-not-preserved"};
  std::set<std::string> seen;
  for (const auto& r : results) {
    if (!wanted.count(r.name)) continue;
    seen.insert(r.name);
    require(r.status == LawStatus::pass, r.name + " failed: " + r.detail);
  }
  require(seen == wanted, "a coherence suite is missing");
}

// -- criterion 5: single-state machines are depth-indexed morphisms ------

void state_recovery() {
  for (Tree t : {constant_tree(PolyCode::from_dirs({1, 0})), login_tree(1, 1)}) {
    auto fs = enumerate_trunc_homs(t, t, 2);
    for (const auto& f : fs) {
      Machine m = trunc_to_s1(f, t, t);
      require(unfold_machine(m, 2) == f, "unfold(machine(f)) != f");
      require(unfold_machine(m, 1) == restrict_depth(f, 1), "projection mismatch");
    }
  }
  require(enumerate_trunc_homs(constant_tree(PolyCode::from_dirs({1, 0})),
                               constant_tree(PolyCode::from_dirs({1, 0})), 2)
                  .size() == 3,
          "depth-2 hom count must be 3");

  // and back: single-state machines unfold to morphisms that rebuild them
  Machine ro = readonly_refinement(1, 1);
  TruncMorphism f = s1_to_trunc(ro, 2);
  require(unfold_machine(trunc_to_s1(f, ro.source(), ro.target()), 2) == f,
          "machine -> morphism -> machine changes the unfolding");
}

// -- criterion 6: coalgebras embed fully faithfully ----------------------

void coalgebra_embedding() {
  PolyCode b = PolyCode::from_dirs({1, 0});
  PolyCode h = ihom_poly(b, b);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);
  Tree tr = constant_tree(b);

  std::vector<SetCoalgebra> coalgs = oracles::oracle_all_coalgebras(h, 1);
  auto two = oracles::oracle_all_coalgebras(h, 2);
  coalgs.insert(coalgs.end(), two.begin(), two.end());

  for (const SetCoalgebra& a : coalgs) {
    for (const SetCoalgebra& c : coalgs) {
      Machine ma = embed_coalgebra(b, b, a, tp, tq);
      Machine mc = embed_coalgebra(b, b, c, tp, tq);
      std::vector<std::size_t> f(a.states, 0);
      while (true) {
        require(check_machine_map(f, ma, mc) == oracles::oracle_coalgebra_morphism(f, a, c),
                "machine maps differ from coalgebra morphisms");
        std::size_t s = a.states;
        while (s > 0) {
          if (++f[s - 1] < c.states) break;
          f[s - 1] = 0;
          --s;
        }
        if (s == 0) break;
      }
    }
  }

  // composition is preserved up to unfolding
  for (std::size_t x = 0; x < two.size(); x += 2) {
    for (std::size_t y = 1; y < two.size(); y += 3) {
      SetCoalgebra comp = oracles::oracle_org_compose(two[x], two[y], b, b, b);
      Machine lhs = compose_machines(embed_coalgebra(b, b, two[x], tp, tq),
                                     embed_coalgebra(b, b, two[y], tq, tr));
      Machine rhs = embed_coalgebra(b, b, comp, tp, tr);
      for (std::size_t n = 0; n <= 3; ++n) {
        require(unfold_machine(lhs, n) == unfold_machine(rhs, n),
                "embedding does not respect composition");
      }
    }
  }
}

// -- criterion 7: the strategy decision matches game search --------------

void nim_strategy() {
  auto start = std::chrono::steady_clock::now();
  for (std::size_t heap = 1; heap <= 9; ++heap) {
    Tree t = nim_tree({heap, {1, 2}});
    bool exists = exists_map_from_y(t);
    require(exists == (heap % 3 != 0), "strategy existence differs from heap mod 3");
    require(exists == oracles::oracle_first_player_wins(heap, {1, 2}),
            "strategy existence differs from the game search");
  }

  for (std::size_t heap : {std::size_t{4}, std::size_t{5}}) {
    Tree t = nim_tree({heap, {1, 2}});
    auto witness = from_y_witness(t);
    require(witness.has_value(), "missing witness");
    require(bool(validate_machine(*witness)), "witness machine invalid");
    TruncMorphism f = unfold_machine(*witness, 4);
    require(bool(validate_trunc(f, witness->source(), t, 4)), "witness unfolding invalid");

    // exhaustive opponent play: the machine must end every branch itself
    std::function<void(const Tree&)> play = [&](const Tree& node) {
      require(node.root().size() > 0, "the machine was driven into a dead interface");
      PolyMap a = witness->act(std::size_t{0}, witness->source(), node);
      std::size_t i = a.on_pos(0);
      for (std::size_t d = 0; d < node.root().dirs(i); ++d) play(node.child(i, d));
    };
    play(t);
  }
  require(seconds_since(start) < 5.0, "exceeded the 5 s limit");
}

// -- criterion 8: the read-only protocol refines the full one ------------

void protocol_refinement() {
  Machine ro = readonly_refinement();
  require(bool(validate_machine(ro)), "refinement machine invalid");
  TruncMorphism f = unfold_machine(ro, 6);
  require(bool(validate_trunc(f, ro.source(), ro.target(), 6)),
          "refinement does not validate to depth 6");
  for (const ReachableTriple& t : reachable_triples(ro)) {
    PolyMap a = ro.act(t.state, t.pn, t.qn);
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      const auto& target = t.qn.root().at(a.on_pos(i));
      require(!target.label || target.label->rfind("set:", 0) != 0,
              "the refinement reaches a write position");
    }
  }
}

// -- criterion 9: the progressive demo -----------------------------------

void progressive_demo_criterion() {
  auto start = std::chrono::steady_clock::now();
  ProgressiveConfig cfg;  // k=2, resolutions (1,2), 3 quantization levels, seed 42
  const std::size_t steps = 200;

  ProgressiveTrajectory t1 = progressive_demo(cfg, steps);
  ProgressiveTrajectory t2 = progressive_demo(cfg, steps);
  require(trajectory_to_jsonl(t1) == trajectory_to_jsonl(t2),
          "(a) trajectories are not bit-identical");

  const std::size_t k = cfg.latent_dim;
  const std::size_t last = cfg.resolutions.size() - 1;
  std::vector<double> wg = initial_generator_weights(cfg);
  std::vector<double> wd = initial_discriminator_weights(cfg);
  std::size_t level = 0;
  for (const ProgressiveStep& s : t1.steps) {
    require(s.level == level, "level bookkeeping");
    std::size_t n = cfg.resolutions[level];
    std::vector<double> cot = decode_signal(cfg, n, s.direction);
    double sup = 0;
    for (double v : cot) sup = std::max(sup, std::abs(v));
    bool grow = level < last && sup <= cfg.threshold;
    require(s.grew == grow, "(b) transition disagrees with the cotangent partition");

    // (d) run both learners independently on the same routed signals
    std::vector<double> z = decode_signal(cfg, k, s.latent);
    std::vector<double> img = decode_signal(cfg, n, s.position);
    double u = decode_signal(cfg, 1, s.out_direction)[0];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t cc = 0; cc < k; ++cc) {
        wg[r * k + cc] += cfg.learning_rate * cot[r] * z[cc];
      }
    }
    for (std::size_t r = 0; r < n; ++r) wd[r] -= cfg.learning_rate * u * img[r];
    require(wg == s.gen_weights, "(d) generator state differs from the independent run");
    require(wd == s.disc_weights, "(d) discriminator state differs from the independent run");
    level = s.level_after;
  }

  // (c) the closed-form ascent step equals the finite-difference Jacobian
  // transpose applied to the cotangent
  std::vector<double> w0 = initial_generator_weights(cfg);
  for (std::size_t step = 0; step < 3; ++step) {
    const ProgressiveStep& s = t1.steps[step];
    std::size_t n = cfg.resolutions[s.level];
    std::vector<double> z = decode_signal(cfg, k, s.latent);
    std::vector<double> cot = decode_signal(cfg, n, s.direction);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t cc = 0; cc < k; ++cc) {
        const double h = 1e-6;
        auto pairing = [&](double delta) {
          double acc = 0;
          for (std::size_t rr = 0; rr < n; ++rr) {
            double out = 0;
            for (std::size_t c2 = 0; c2 < k; ++c2) {
              double wv = w0[rr * k + c2] + (rr == r && c2 == cc ? delta : 0.0);
              out += wv * z[c2];
            }
            acc += cot[rr] * out;
          }
          return acc;
        };
        double numeric = (pairing(h) - pairing(-h)) / (2 * h);
        require(std::abs(numeric - cot[r] * z[cc]) <= 1e-6,
                "(c) finite-difference check exceeds 1e-6");
      }
    }
    w0 = s.gen_weights;
  }

  require(seconds_since(start) < 10.0, "exceeded the 10 s limit");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*body)();
  };
  const Criterion criteria[] = {
      {"poly-law-suite", poly_law_suite},
      {"hom-count-correspondence", hom_count_correspondence},
      {"closure-adjunction", closure_adjunction},
      {"monoidal-coherence", monoidal_coherence},
      {"state-recovery", state_recovery},
      {"coalgebra-embedding", coalgebra_embedding},
      {"nim-strategy", nim_strategy},
      {"protocol-refinement", protocol_refinement},
      {"progressive-demo", progressive_demo_criterion},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    try {
      c.body();
      std::printf("PASS %-26s (%.2fs)\n", c.name, seconds_since(start));
    } catch (const CriterionFailure& f) {
      ++failures;
      std::printf("FAIL %-26s %s\n", c.name, f.message.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL %-26s unexpected error: %s\n", c.name, e.what());
    }
    std::fflush(stdout);
  }
  return failures;
}

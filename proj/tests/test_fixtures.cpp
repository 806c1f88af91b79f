#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/machine.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace polytree;

TEST_CASE("session protocol fixtures") {
  Tree login = login_tree(3, 2);
  CHECK(login.root().same_shape(PolyCode::from_dirs({2, 0})));
  CHECK(login.root().at(0).label == "login");
  Tree auth = login.child(0, 0);
  CHECK(auth.root().size() == 7);
  CHECK(auth.root().at(3).label == "set:s0");
  CHECK(auth.root().at(6).label == "logout");

  Tree ro = readonly_tree(3);
  CHECK(ro.child(0, 0).root().size() == 4);

  Machine refine = readonly_refinement();
  CHECK(bool(validate_machine(refine)));
  for (const ReachableTriple& t : reachable_triples(refine)) {
    PolyMap a = refine.act(t.state, t.pn, t.qn);
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      const auto& target = t.qn.root().at(a.on_pos(i));
      CHECK((!target.label || target.label->rfind("set:", 0) != 0));
    }
  }
}

TEST_CASE("cell differentiation") {
  const std::size_t L = 2;
  Tree cell = cell_tree(L);
  CHECK(cell.root().same_shape(PolyCode::monomial(L, L * L * L)));

  // direction (l1, l2, l3) encoded l1-major; maximal third receptor kills
  std::size_t apoptosis = 1;  // (0, 0, 1)
  CHECK(bisimilar(cell.child(0, apoptosis), constant_tree(PolyCode::zero())));
  // maximal first receptor differentiates into the single-channel neuron
  std::size_t to_neuron = 1 * L * L;  // (1, 0, 0)
  CHECK(bisimilar(cell.child(0, to_neuron), constant_tree(PolyCode::monomial(L, L))));
  // apoptosis wins a tie
  std::size_t tie = 1 * L * L + 1;  // (1, 0, 1)
  CHECK(bisimilar(cell.child(0, tie), constant_tree(PolyCode::zero())));
  // all quiet: keep growing
  CHECK(bisimilar(cell.child(0, 0), cell));

  CHECK_THROWS_AS(cell_tree(1), ValidateError);
}

TEST_CASE("the organ machine aggregates by maximum") {
  Machine organ = organ_machine();
  CHECK(bool(validate_machine(organ)));
  const Tree& cells = organ.source();
  CHECK(cells.root().size() == 8);

  PolyMap root_act = organ.act(std::size_t{0}, cells, organ.target());
  const std::size_t L = 2;
  for (std::size_t x1 = 0; x1 < L; ++x1) {
    for (std::size_t x2 = 0; x2 < L; ++x2) {
      for (std::size_t x3 = 0; x3 < L; ++x3) {
        std::size_t s = (x1 * L + x2) * L + x3;
        CHECK(root_act.on_pos(s) == std::max({x1, x2, x3}));
      }
    }
  }

  TruncMorphism f = unfold_machine(organ, 3);
  CHECK(bool(validate_trunc(f, organ.source(), organ.target(), 3)));

  // after an apoptosis signal some component dies and the organ falls silent
  bool found_dead = false;
  for (const ReachableTriple& t : reachable_triples(organ)) {
    if (t.pn.root().size() == 0) {
      found_dead = true;
      PolyMap a = organ.act(t.state, t.pn, t.qn);
      CHECK(a.source().size() == 0);
    }
  }
  CHECK(found_dead);
}

TEST_CASE("take-away game trees") {
  Tree one = nim_tree({1, {1, 2}});
  CHECK(one.root().size() == 1);
  CHECK(one.root().dirs(0) == 0);

  Tree zero_heap = nim_tree({0, {1, 2}});
  CHECK(zero_heap.root().size() == 0);

  for (std::size_t h = 1; h <= 9; ++h) {
    CHECK(exists_map_from_y(nim_tree({h, {1, 2, 3}})) ==
          oracles::oracle_first_player_wins(h, {1, 2, 3}));
  }

  Tree outcomes = nim_with_outcomes({3, {1, 2}});
  CHECK(outcomes.root().size() == 3);  // take1, take2, concede
  CHECK(exists_map_from_y(outcomes));

  CHECK_THROWS_AS(nim_tree({3, {}}), ValidateError);
}

TEST_CASE("progressive config validation") {
  ProgressiveConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.quant_levels = 4;
  CHECK_THROWS_AS(validate(cfg), ValidateError);
  cfg = ProgressiveConfig{};
  cfg.resolutions = {2, 2};
  CHECK_THROWS_AS(validate(cfg), ValidateError);
  cfg = ProgressiveConfig{};
  cfg.threshold = -1;
  CHECK_THROWS_AS(validate(cfg), ValidateError);
}

TEST_CASE("signal quantization") {
  ProgressiveConfig cfg;
  CHECK(channel_poly(cfg, 2).size() == 9);
  CHECK(channel_poly(cfg, 2).dirs(0) == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    std::vector<double> v = decode_signal(cfg, 2, i);
    CHECK(encode_signal(cfg, v) == i);
  }
  CHECK(decode_signal(cfg, 1, 0)[0] == doctest::Approx(-1.0));
  CHECK(decode_signal(cfg, 1, 1)[0] == doctest::Approx(0.0));
  CHECK(encode_signal(cfg, {0.4}) == 1);   // rounds to the nearest level
  CHECK(encode_signal(cfg, {7.0}) == 2);   // clamps to the grid
}

TEST_CASE("the resolution ladder grows exactly on small cotangents") {
  ProgressiveConfig cfg;  // threshold 0.5: only the zero cotangent grows
  Tree ladder = progressive_tree(cfg);
  CHECK(ladder.root().size() == 3);
  std::size_t zero_cot = encode_signal(cfg, {0.0});
  CHECK(ladder.child(0, zero_cot).node() == 1);
  std::size_t big_cot = encode_signal(cfg, {1.0});
  CHECK(ladder.child(0, big_cot).node() == 0);
  // the last level is constant
  Tree last = ladder.child(0, zero_cot);
  for (std::size_t v = 0; v < 9; ++v) CHECK(last.child(0, v).node() == 1);

  // a zero threshold still grows on an exactly-zero cotangent
  ProgressiveConfig tight = cfg;
  tight.threshold = 0.0;
  Tree ladder0 = progressive_tree(tight);
  CHECK(ladder0.child(0, zero_cot).node() == 1);
  CHECK(ladder0.child(0, big_cot).node() == 0);
}

TEST_CASE("demo trajectories are deterministic and grow correctly") {
  ProgressiveConfig cfg;
  ProgressiveTrajectory a = progressive_demo(cfg, 12);
  ProgressiveTrajectory b = progressive_demo(cfg, 12);
  REQUIRE(a.steps.size() == 12);
  const std::size_t last = cfg.resolutions.size() - 1;
  for (std::size_t s = 0; s < a.steps.size(); ++s) {
    CHECK(a.steps[s].gen_weights == b.steps[s].gen_weights);
    CHECK(a.steps[s].direction == b.steps[s].direction);

    const ProgressiveStep& st = a.steps[s];
    std::vector<double> cot = decode_signal(cfg, cfg.resolutions[st.level], st.direction);
    double sup = 0;
    for (double v : cot) sup = std::max(sup, std::abs(v));
    bool grow = st.level < last && sup <= cfg.threshold;
    CHECK(st.grew == grow);
  }
}

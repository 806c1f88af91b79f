#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/machine.hpp"

#include <doctest.h>

#include <set>

using namespace polytree;

namespace {

PolyCode bp() { return PolyCode::from_dirs({1, 0}); }

// The refinement morphism written out directly, without going through a
// machine: identity at the session root, query/logout embedding at the
// authenticated pair.
TruncMorphism expected_refinement(const Tree& ro, const Tree& full, std::size_t str_n,
                                  std::size_t depth) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  if (ro.node() == 0) {
    out.root_map = PolyMap(ro.root(), full.root(), {0, 1}, {{0, 1}, {}});
  } else {
    std::vector<std::size_t> on_pos(str_n + 1);
    std::vector<std::vector<std::size_t>> on_dir(str_n + 1);
    for (std::size_t s = 0; s < str_n; ++s) {
      on_pos[s] = s;
      for (std::size_t r = 0; r < str_n; ++r) on_dir[s].push_back(r);
    }
    on_pos[str_n] = 2 * str_n;
    out.root_map = PolyMap(ro.root(), full.root(), std::move(on_pos), std::move(on_dir));
  }
  const PolyMap& root = *out.root_map;
  out.children.resize(ro.root().size());
  for (std::size_t i = 0; i < ro.root().size(); ++i) {
    std::size_t j = root.on_pos(i);
    for (std::size_t e = 0; e < full.root().dirs(j); ++e) {
      std::size_t d = root.on_dir(i, e);
      out.children[i].push_back(
          expected_refinement(ro.child(i, d), full.child(j, e), str_n, depth - 1));
    }
  }
  return out;
}

std::vector<SetCoalgebra> small_coalgebras(const PolyCode& h, std::size_t states) {
  // every coalgebra: per state a position and a successor per direction
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
    SetCoalgebra b{h, states, {}, {}};
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

}  // namespace

TEST_CASE("machine validation") {
  CHECK(bool(validate_machine(identity_machine(login_tree()))));
  CHECK(bool(validate_machine(identity_machine(nim_tree({4, {1, 2}})))));
  CHECK(bool(validate_machine(readonly_refinement())));

  // an action built for the wrong node: source code mismatch at a
  // reachable triple
  Tree login = login_tree(1, 1);
  Machine stale = Machine::finite(
      login, login, 1, 0,
      [login](std::size_t, const Tree&, const Tree&) {
        return identity_poly_map(login.root());  // wrong after any transition
      },
      [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 0;
      });
  MachineCheck check = validate_machine(stale);
  CHECK(!check.ok);
  REQUIRE(check.triple.has_value());
  CHECK(check.message.find("mismatch") != std::string::npos);
}

TEST_CASE("unfolding machines") {
  Tree login = login_tree();
  CHECK(unfold_machine(identity_machine(login), 3) == id_trunc(login, 3));

  Machine ro = readonly_refinement();
  TruncMorphism got = unfold_machine(ro, 4);
  CHECK(got == expected_refinement(ro.source(), ro.target(), 3, 4));
  CHECK(restrict_depth(got, 2) == unfold_machine(ro, 2));
}

TEST_CASE("composition of machines") {
  PolyCode b = bp();
  PolyCode h = ihom_poly(b, b);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);
  Tree tr = constant_tree(b);
  Tree ts = constant_tree(b);
  auto coalgs = small_coalgebras(h, 2);
  Machine m = embed_coalgebra(b, b, coalgs[1], tp, tq);
  Machine n = embed_coalgebra(b, b, coalgs[4], tq, tr);
  Machine o = embed_coalgebra(b, b, coalgs[7], tr, ts);

  Machine with_id = compose_machines(m, identity_machine(tq));
  for (std::size_t d = 0; d <= 3; ++d) {
    CHECK(unfold_machine(with_id, d) == unfold_machine(m, d));
    CHECK(unfold_machine(compose_machines(m, n), d) ==
          compose_trunc(unfold_machine(m, d), unfold_machine(n, d)));
    CHECK(unfold_machine(compose_machines(compose_machines(m, n), o), d) ==
          unfold_machine(compose_machines(m, compose_machines(n, o)), d));
  }
  CHECK(bool(validate_machine(compose_machines(m, n))));
  CHECK_THROWS_AS(compose_machines(m, readonly_refinement()), ValidateError);
}

TEST_CASE("machine maps match coalgebra morphisms") {
  PolyCode b = bp();
  PolyCode h = ihom_poly(b, b);
  Tree tp = constant_tree(b);
  Tree tq = constant_tree(b);

  Machine id_like = embed_coalgebra(b, b, small_coalgebras(h, 1)[0], tp, tq);
  CHECK(check_machine_map({0}, id_like, id_like));

  // brute force over all functions for |S| = |S'| = 3
  auto threes = small_coalgebras(h, 3);
  const SetCoalgebra& a = threes[5];
  const SetCoalgebra& b2 = threes[17];
  Machine ma = embed_coalgebra(b, b, a, tp, tq);
  Machine mb = embed_coalgebra(b, b, b2, tp, tq);
  std::size_t machine_maps = 0, coalg_maps = 0;
  std::vector<std::size_t> f(3, 0);
  while (true) {
    if (check_machine_map(f, ma, mb)) ++machine_maps;
    if (coalgebra_morphism(f, a, b2)) ++coalg_maps;
    std::size_t s = 3;
    while (s > 0) {
      if (++f[s - 1] < 3) break;
      f[s - 1] = 0;
      --s;
    }
    if (s == 0) break;
  }
  CHECK(machine_maps == coalg_maps);

  // collapsing states with different actions is not a machine map
  SetCoalgebra two{h, 2, {0, 1}, {{1}, {}}};
  SetCoalgebra one{h, 1, {0}, {{0}}};
  Machine m2 = embed_coalgebra(b, b, two, tp, tq);
  Machine m1 = embed_coalgebra(b, b, one, tp, tq);
  CHECK(!check_machine_map({0, 0}, m2, m1));
}

TEST_CASE("embedding coalgebras and the retraction") {
  PolyCode b = bp();
  PolyCode h = ihom_poly(b, b);
  // always apply the first map, staying in the same state
  SetCoalgebra beta{h, 1, {0}, {{0}}};
  Machine m = embed_coalgebra(b, b, beta);
  CHECK(bool(validate_machine(m)));
  TruncMorphism f = unfold_machine(m, 2);
  PolyMap first = enumerate_maps(b, b)[0];
  CHECK(*f.root_map == first);
  CHECK(*f.children[0][0].root_map == first);

  CHECK(is_time_invariant(m));
  CHECK(retract_to_coalgebra(m) == beta);

  SetCoalgebra wrong{PolyCode::y(), 1, {0}, {{0}}};
  CHECK_THROWS_AS(embed_coalgebra(b, b, wrong), ValidateError);
}

TEST_CASE("time invariance distinguishes node dependence from state dependence") {
  PolyCode b = bp();
  auto maps = enumerate_maps(b, b);

  // two-node presentation of the constant tree
  FiniteTreeData data;
  data.root = 0;
  data.code = {b, b};
  data.next = {{{1}, {}}, {{1}, {}}};
  Tree two_node = Tree::finite(std::move(data));
  Machine node_dep = Machine::finite(
      two_node, two_node, 1, 0,
      [maps](std::size_t, const Tree& pn, const Tree&) {
        return maps[pn.node() == 0 ? 0 : 1];
      },
      [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 0;
      });
  CHECK(bool(validate_machine(node_dep)));
  CHECK(!is_time_invariant(node_dep));

  Machine phase = Machine::finite(
      constant_tree(b), constant_tree(b), 2, 0,
      [maps](std::size_t s, const Tree&, const Tree&) { return maps[s]; },
      [](std::size_t s, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 1 - s;
      });
  CHECK(is_time_invariant(phase));

  CHECK_THROWS_AS(is_time_invariant(identity_machine(login_tree())), Error);
}

TEST_CASE("single-state machines are truncated morphisms") {
  Tree b = constant_tree(bp());
  CHECK(s1_to_trunc(identity_machine(b), 3) == id_trunc(b, 3));
  CHECK(unfold_machine(trunc_to_s1(id_trunc(b, 3), b, b), 3) == id_trunc(b, 3));

  auto fs = enumerate_trunc_homs(b, b, 2);
  REQUIRE(fs.size() == 3);
  for (const auto& f : fs) {
    Machine m = trunc_to_s1(f, b, b);
    CHECK(unfold_machine(m, 2) == f);
    CHECK(unfold_machine(m, 1) == restrict_depth(f, 1));
  }
  CHECK_THROWS_AS(unfold_machine(trunc_to_s1(fs[0], b, b), 3), Error);

  PolyCode h = ihom_poly(bp(), bp());
  Machine two_states = embed_coalgebra(bp(), bp(), small_coalgebras(h, 2)[3]);
  CHECK_THROWS_AS(s1_to_trunc(two_states, 2), Error);
}

TEST_CASE("strategy witnesses play whole games") {
  Tree t = nim_tree({4, {1, 2}});
  auto w = from_y_witness(t);
  REQUIRE(w.has_value());
  CHECK(bool(validate_machine(*w)));

  // exhaustive opponent play: the machine must end every branch itself
  std::function<void(const Tree&)> play = [&](const Tree& node) {
    REQUIRE(node.root().size() > 0);
    PolyMap a = w->act(std::size_t{0}, w->source(), node);
    std::size_t i = a.on_pos(0);
    for (std::size_t d = 0; d < node.root().dirs(i); ++d) play(node.child(i, d));
  };
  play(t);

  CHECK(!from_y_witness(nim_tree({3, {1, 2}})).has_value());
}

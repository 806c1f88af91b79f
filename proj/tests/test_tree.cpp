#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/tree.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace polytree;

namespace {
Tree tb() { return constant_tree(PolyCode::from_dirs({1, 0})); }
}  // namespace

TEST_CASE("roots and children of the session protocol") {
  Tree login = login_tree();
  CHECK(login.root().same_shape(PolyCode::from_dirs({2, 0})));
  Tree auth = login.child(0, 0);
  CHECK(auth.root().size() == 7);  // 3 queries + 3 writes + logout
  CHECK(same_handle(login.child(0, 1), login));      // failure retries
  CHECK(same_handle(auth.child(0, 0), auth));        // queries stay authenticated
  CHECK_THROWS_AS(login.child(1, 0), ValidateError);  // quit has no directions
}

TEST_CASE("constant trees") {
  Tree ty = constant_tree(PolyCode::y());
  CHECK(ty.root().same_shape(PolyCode::y()));
  CHECK(same_handle(ty.child(0, 0), ty));

  Tree zero = constant_tree(PolyCode::zero());
  CHECK(zero.root().size() == 0);

  TruncTree t = truncate(tb(), 2);
  REQUIRE(t.code.has_value());
  CHECK(t.code->same_shape(PolyCode::from_dirs({1, 0})));
  CHECK(t.children[0][0].code->same_shape(PolyCode::from_dirs({1, 0})));
}

TEST_CASE("sums of trees keep their own children") {
  Tree ty = constant_tree(PolyCode::y());
  Tree t1 = constant_tree(PolyCode::one());
  Tree s = sum_tree(ty, t1);
  CHECK(s.root().same_shape(PolyCode::from_dirs({1, 0})));
  CHECK(bisimilar(s.child(0, 0), ty));
  CHECK(bisimilar(sum_tree(ty, constant_tree(PolyCode::zero())), ty));

  // the constant tree on a sum has different children below the root
  CHECK(bisimilar(s, tb(), 1));
  CHECK(!bisimilar(s, tb(), 2));
  CHECK(!bisimilar(s, tb()));
}

TEST_CASE("tensor trees") {
  Tree ty = constant_tree(PolyCode::y());
  Tree login = login_tree(1, 1);
  CHECK(bisimilar(tensor_tree(ty, login), login));

  Tree cell = cell_tree();
  const Tree cells[] = {cell, cell, cell};
  Tree organ = tensor_tree(std::span<const Tree>(cells, 3));
  CHECK(organ.root().size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(organ.root().dirs(i) == 512);

  // parallel composition is not literally symmetric, shapes diverge below
  Tree ab = tensor_tree(login, tb());
  Tree ba = tensor_tree(tb(), login);
  CHECK(bisimilar(ab, ba, 1));
  CHECK(!bisimilar(ab, ba, 2));

  // strictness on constant factors
  PolyCode p = PolyCode::from_dirs({2});
  PolyCode q = PolyCode::from_dirs({1, 0});
  CHECK(structurally_equal(tensor_tree(constant_tree(p), constant_tree(q)),
                           constant_tree(tensor_poly(p, q))));
}

TEST_CASE("cartesian action of a fixed polynomial") {
  Tree t1 = constant_tree(PolyCode::one());
  Tree a = act_prod(PolyCode::y(), t1);
  CHECK(a.root().same_shape(PolyCode::y()));
  CHECK(same_handle(a.child(0, 0), a));

  Tree login = login_tree(1, 1);
  CHECK(bisimilar(act_prod(PolyCode::one(), login), login));

  PolyCode p = PolyCode::from_dirs({1, 0});
  PolyCode q = PolyCode::from_dirs({2});
  CHECK(bisimilar(act_prod(p, constant_tree(q)), constant_tree(prod_poly(p, q))));
}

TEST_CASE("truncation") {
  Tree login = login_tree();
  CHECK(truncate(login, 0).depth == 0);
  CHECK(!truncate(login, 0).code.has_value());

  TruncTree t2 = truncate(login, 2);
  REQUIRE(t2.code->same_shape(PolyCode::from_dirs({2, 0})));
  CHECK(t2.children[0].size() == 2);
  CHECK(t2.children[1].empty());
  CHECK(t2.children[0][0].code->size() == 7);
  CHECK(t2.children[0][1].code->same_shape(PolyCode::from_dirs({2, 0})));

  Tree nim3 = nim_tree({3, {1, 2}});
  TruncTree n1 = truncate(nim3, 1);
  CHECK(n1.code->size() == 2);  // take1, take2

  CHECK_THROWS_AS(truncate(login, 6, Budget{100}), BudgetError);
}

TEST_CASE("bisimilarity is decided exactly on finite trees") {
  Tree cell = cell_tree();
  CHECK(bisimilar(cell, cell));
  CHECK(bisimilar(cell.child(0, 0), cell));  // the growth child is the cell again

  Tree lazy = ihom_tree(tb(), tb());
  CHECK_THROWS_AS(bisimilar(lazy, tb()), Error);
  CHECK(bisimilar(lazy, tb(), 3));
}

TEST_CASE("strategy existence") {
  CHECK(!exists_map_from_y(constant_tree(PolyCode::zero())));
  CHECK(exists_map_to_y(constant_tree(PolyCode::zero())));

  for (std::size_t h = 1; h <= 9; ++h) {
    Tree t = nim_tree({h, {1, 2}});
    CHECK(exists_map_from_y(t) == (h % 3 != 0));
    CHECK(exists_map_from_y(t) == oracles::oracle_first_player_wins(h, {1, 2}));
  }
  CHECK(exists_map_to_y(nim_tree({3, {1, 2}})));
  CHECK(!exists_map_to_y(nim_tree({1, {1, 2}})));

  CHECK_THROWS_AS(exists_map_from_y(ihom_tree(tb(), tb())), Error);
}

TEST_CASE("behavior counts generalize the cofree tower") {
  Tree t = tb();
  CHECK(behavior_count(t, 0) == 1);
  CHECK(behavior_count(t, 1) == 2);
  CHECK(behavior_count(t, 2) == 3);
  CHECK(behavior_count(t, 3) == 4);
  auto bs = enumerate_behaviors(t, 2);
  CHECK(bs.size() == 3);
}

TEST_CASE("lazy unfolding is memoized and pure") {
  int calls = 0;
  Tree t = Tree::lazy([&calls]() {
    ++calls;
    return std::pair{PolyCode::y(), std::function<Tree(std::size_t, std::size_t)>(
                                        [](std::size_t, std::size_t) {
                                          return constant_tree(PolyCode::one());
                                        })};
  });
  CHECK(t.root().same_shape(PolyCode::y()));
  CHECK(t.root().same_shape(PolyCode::y()));
  Tree c1 = t.child(0, 0);
  Tree c2 = t.child(0, 0);
  CHECK(same_handle(c1, c2));
  CHECK(calls == 1);
}

#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/json_io.hpp"
#include "polytree/machine.hpp"

#include <doctest.h>

#include <json.hpp>

#include <set>
#include <sstream>

using namespace polytree;

TEST_CASE("polynomial documents round trip") {
  PolyCode p({PositionEntry{"login", 2, std::vector<std::string>{"success", "failure"}},
              PositionEntry{"quit", 0, {}}});
  PolyCode back = parse_poly_document(poly_to_json(p));
  CHECK(back == p);

  CHECK_THROWS_WITH_AS(parse_poly_document(R"({"positions":[{"dirs":-2}]})"),
                       doctest::Contains("negative"), ValidateError);
  CHECK_THROWS_AS(
      parse_poly_document(R"({"positions":[{"label":"a","dirs":0},{"label":"a","dirs":0}]})"),
      ValidateError);
  CHECK_THROWS_AS(parse_poly_document(R"({"positions":[{"dirs":2,"dirLabels":["x"]}]})"),
                  ValidateError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_poly_document("{\n  \"positions\": [\n    {\"dirs\": }\n  ]\n}");
    FAIL("expected a parse error");
  } catch (const ValidateError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
}

TEST_CASE("tree documents round trip") {
  Tree login = login_tree();
  Tree back = parse_tree_document(tree_to_json(login));
  CHECK(structurally_equal(back, login));
  CHECK(bisimilar(back, login));

  // a missing transition is reported with its node and indices
  std::string broken = R"({
    "nodes": [{"poly": {"positions": [{"dirs": 2}]}, "next": [[0]]}],
    "root": 0
  })";
  CHECK_THROWS_WITH_AS(parse_tree_document(broken),
                       doctest::Contains("next not total at node 0, (i=0,d=1)"), ValidateError);
}

TEST_CASE("morphism documents round trip") {
  Machine ro = readonly_refinement(1, 1);
  TruncMorphism f = unfold_machine(ro, 3);
  std::string doc = morphism_to_json(f);
  TruncMorphism back = parse_morphism_document(doc, ro.source(), ro.target());
  CHECK(back == f);
}

TEST_CASE("machine documents bind and validate") {
  Machine ro = readonly_refinement(2, 2);
  std::string doc = machine_to_json(ro, /*embed_trees=*/true);
  MachineTable table = parse_machine_document(doc);
  REQUIRE(table.p.has_value());
  REQUIRE(table.q.has_value());
  Machine bound = bind_machine(table, *table.p, *table.q);
  CHECK(bool(validate_machine(bound)));
  CHECK(unfold_machine(bound, 4) == unfold_machine(ro, 4));

  // rebinding over the wrong source tree: the stored actions no longer
  // match the node codes
  Machine wrong = bind_machine(table, login_tree(2, 2), *table.q);
  MachineCheck check = validate_machine(wrong);
  CHECK(!check.ok);
  CHECK(check.message.find("mismatch") != std::string::npos);
}

TEST_CASE("document validation dispatches on kind") {
  CHECK(bool(validate_document(tree_to_json(nim_tree({3, {1, 2}}), true))));
  CHECK(bool(validate_document(poly_to_json(PolyCode::from_dirs({2, 0}), true))));
  CHECK(bool(validate_document(machine_to_json(readonly_refinement(1, 1)))));

  DocumentDiagnosis no_kind = validate_document(tree_to_json(nim_tree({2, {1}}), false));
  CHECK(!no_kind.ok);
  CHECK(no_kind.message.find("kind") != std::string::npos);

  DocumentDiagnosis bad = validate_document(R"({"kind":"poly","positions":[{"dirs":-1}]})");
  CHECK(!bad.ok);
}

TEST_CASE("trajectory records carry exactly the published fields") {
  ProgressiveConfig cfg;
  std::string lines = trajectory_to_jsonl(progressive_demo(cfg, 5));
  std::istringstream in(lines);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    CHECK(keys == std::set<std::string>{"step", "level", "position", "direction", "branch",
                                        "wG", "wD"});
    CHECK(j["step"] == n);
    CHECK((j["branch"] == "stay" || j["branch"] == "grow"));
    ++n;
  }
  CHECK(n == 5);
}

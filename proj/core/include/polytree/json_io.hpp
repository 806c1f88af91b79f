#pragma once

#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/machine.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polytree {

// JSON document formats. All parsers throw ValidateError with a location
// path; JSON syntax errors report line and column.
//
//   poly      {"positions":[{"label"?, "dirs", "dirLabels"?}]}
//   tree      {"nodes":[{"poly": POLY, "next":[[node per direction] per position]}], "root": n}
//   map       {"onPos":[j per position], "onDir":[[d per target direction] per position]}
//   morphism  {"depth": n, "rootMap": MAP, "children": {"i,e": MORPHISM | null}}
//   machine   {"states": S, "start": s,
//              "triples":[{"state","pNode","qNode","act": MAP,"upd":[[s' per e] per i]}]}
//
// Morphism and machine documents may embed their trees under "p" and "q";
// standalone validation requires them. A top-level "kind" field names the
// document type.

PolyCode parse_poly_document(const std::string& text);
Tree parse_tree_document(const std::string& text);
TruncMorphism parse_morphism_document(const std::string& text, const Tree& p, const Tree& q);

/// Sparse machine description bound to trees at load time.
struct MachineTable {
  std::size_t states = 0;
  std::size_t start = 0;
  std::optional<Tree> p, q;  // embedded trees, when present
  struct Entry {
    std::vector<std::size_t> on_pos;
    std::vector<std::vector<std::size_t>> on_dir;
    std::vector<std::vector<std::size_t>> upd;
  };
  std::map<std::array<std::size_t, 3>, Entry> triples;  // (state, pNode, qNode)
};

MachineTable parse_machine_document(const std::string& text);
Machine bind_machine(const MachineTable& table, Tree p, Tree q);

std::string poly_to_json(const PolyCode& p, bool with_kind = false);
std::string tree_to_json(const Tree& t, bool with_kind = false);
std::string map_to_json(const PolyMap& f);
std::string morphism_to_json(const TruncMorphism& f, bool with_kind = false);

/// Serializes a finite machine as its reachable action/update table,
/// optionally embedding both trees.
std::string machine_to_json(const Machine& m, bool embed_trees = true);

/// One JSON record per step: {"step","level","position","direction",
/// "branch","wG","wD"}.
std::string trajectory_to_jsonl(const ProgressiveTrajectory& t);

struct DocumentDiagnosis {
  bool ok = true;
  std::string kind;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Dispatches on the document's "kind" field and runs the matching
/// validator. Morphism and machine documents must embed their trees.
DocumentDiagnosis validate_document(const std::string& text);

}  // namespace polytree

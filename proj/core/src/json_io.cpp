#include "polytree/json_io.hpp"

#include "polytree/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace polytree {

namespace {

using Json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    auto [line, col] = line_col(text, err.byte > 0 ? err.byte - 1 : 0);
    throw ValidateError("parse error at line " + std::to_string(line) + ", column " +
                        std::to_string(col) + ": " + err.what());
  }
}

std::size_t require_index(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0) throw ValidateError("negative value", path);
    return static_cast<std::size_t>(v);
  }
  throw ValidateError("expected a nonnegative integer", path);
}

const Json& require_field(const Json& j, const char* name, const std::string& path) {
  auto it = j.find(name);
  if (it == j.end()) throw ValidateError(std::string("missing field \"") + name + "\"", path);
  return *it;
}

PolyCode poly_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidateError("expected an object", path);
  const Json& positions = require_field(j, "positions", path);
  if (!positions.is_array()) throw ValidateError("positions must be an array", path);
  std::vector<PositionEntry> entries;
  std::size_t i = 0;
  for (const Json& pj : positions) {
    std::string ppath = path + ".positions[" + std::to_string(i) + "]";
    PositionEntry e;
    e.dirs = require_index(require_field(pj, "dirs", ppath), ppath + ".dirs");
    if (pj.contains("label")) {
      if (!pj["label"].is_string()) throw ValidateError("label must be a string", ppath);
      e.label = pj["label"].get<std::string>();
    }
    if (pj.contains("dirLabels")) {
      if (!pj["dirLabels"].is_array()) throw ValidateError("dirLabels must be an array", ppath);
      std::vector<std::string> dl;
      for (const Json& s : pj["dirLabels"]) {
        if (!s.is_string()) throw ValidateError("dirLabels entries must be strings", ppath);
        dl.push_back(s.get<std::string>());
      }
      e.dir_labels = std::move(dl);
    }
    entries.push_back(std::move(e));
    ++i;
  }
  return PolyCode(std::move(entries));  // runs the invariant checks
}

Json poly_json(const PolyCode& p) {
  Json positions = Json::array();
  for (const auto& e : p.positions()) {
    Json pj = Json::object();
    if (e.label) pj["label"] = *e.label;
    pj["dirs"] = e.dirs;
    if (e.dir_labels) pj["dirLabels"] = *e.dir_labels;
    positions.push_back(std::move(pj));
  }
  return Json{{"positions", std::move(positions)}};
}

Tree tree_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidateError("expected an object", path);
  const Json& nodes = require_field(j, "nodes", path);
  if (!nodes.is_array()) throw ValidateError("nodes must be an array", path);
  FiniteTreeData data;
  std::size_t n = 0;
  for (const Json& nj : nodes) {
    std::string npath = path + ".nodes[" + std::to_string(n) + "]";
    data.code.push_back(poly_from_json(require_field(nj, "poly", npath), npath + ".poly"));
    const Json& next = require_field(nj, "next", npath);
    if (!next.is_array()) throw ValidateError("next must be an array", npath);
    std::vector<std::vector<std::size_t>> rows;
    std::size_t i = 0;
    for (const Json& row : next) {
      if (!row.is_array()) throw ValidateError("next rows must be arrays", npath);
      std::vector<std::size_t> r;
      std::size_t d = 0;
      for (const Json& v : row) {
        r.push_back(require_index(
            v, npath + ".next[" + std::to_string(i) + "][" + std::to_string(d) + "]"));
        ++d;
      }
      rows.push_back(std::move(r));
      ++i;
    }
    data.next.push_back(std::move(rows));
    ++n;
  }
  data.root = require_index(require_field(j, "root", path), path + ".root");
  validate(data);
  return Tree::finite(std::move(data));
}

Json tree_json(const Tree& t) {
  if (!t.is_finite()) throw Error("cannot serialize a lazy tree");
  auto data = canonicalize(t);
  Json nodes = Json::array();
  for (std::size_t n = 0; n < data->code.size(); ++n) {
    nodes.push_back(Json{{"poly", poly_json(data->code[n])}, {"next", data->next[n]}});
  }
  return Json{{"nodes", std::move(nodes)}, {"root", data->root}};
}

void map_tables_from_json(const Json& j, const std::string& path,
                          std::vector<std::size_t>& on_pos,
                          std::vector<std::vector<std::size_t>>& on_dir) {
  const Json& jp = require_field(j, "onPos", path);
  const Json& jd = require_field(j, "onDir", path);
  if (!jp.is_array() || !jd.is_array()) throw ValidateError("onPos/onDir must be arrays", path);
  for (std::size_t i = 0; i < jp.size(); ++i) {
    on_pos.push_back(require_index(jp[i], path + ".onPos[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < jd.size(); ++i) {
    if (!jd[i].is_array()) throw ValidateError("onDir rows must be arrays", path);
    std::vector<std::size_t> row;
    for (std::size_t e = 0; e < jd[i].size(); ++e) {
      row.push_back(require_index(
          jd[i][e], path + ".onDir[" + std::to_string(i) + "][" + std::to_string(e) + "]"));
    }
    on_dir.push_back(std::move(row));
  }
}

PolyMap map_from_json(const Json& j, const PolyCode& source, const PolyCode& target,
                      const std::string& path) {
  std::vector<std::size_t> on_pos;
  std::vector<std::vector<std::size_t>> on_dir;
  map_tables_from_json(j, path, on_pos, on_dir);
  try {
    return PolyMap(source, target, std::move(on_pos), std::move(on_dir));
  } catch (const ValidateError& err) {
    throw ValidateError(std::string("invalid map: ") + err.what(), path);
  }
}

Json map_json(const PolyMap& f) {
  return Json{{"onPos", f.on_pos_table()}, {"onDir", f.on_dir_table()}};
}

TruncMorphism morphism_from_json(const Json& j, const Tree& p, const Tree& q, std::size_t depth,
                                 const std::string& path) {
  if (j.is_null()) {
    if (depth != 0) throw ValidateError("null morphism at positive depth", path);
    return TruncMorphism{};
  }
  if (depth == 0) throw ValidateError("expected null at depth 0", path);
  TruncMorphism out;
  out.depth = depth;
  out.root_map = map_from_json(require_field(j, "rootMap", path), p.root(), q.root(), path);
  const Json& children = require_field(j, "children", path);
  if (!children.is_object()) throw ValidateError("children must be an object", path);
  const PolyMap& root = *out.root_map;
  out.children.resize(p.root().size());
  std::size_t expected = 0;
  for (std::size_t i = 0; i < p.root().size(); ++i) {
    std::size_t j2 = root.on_pos(i);
    out.children[i].resize(q.root().dirs(j2));
    for (std::size_t e = 0; e < q.root().dirs(j2); ++e) {
      std::string key = std::to_string(i) + "," + std::to_string(e);
      auto it = children.find(key);
      if (it == children.end()) {
        throw ValidateError("missing child \"" + key + "\"", path + ".children");
      }
      std::size_t d = root.on_dir(i, e);
      out.children[i][e] = morphism_from_json(*it, p.child(i, d), q.child(j2, e), depth - 1,
                                              path + ".children[" + key + "]");
      ++expected;
    }
  }
  if (children.size() != expected) {
    throw ValidateError("children has entries that do not match the root map",
                        path + ".children");
  }
  return out;
}

std::size_t morphism_depth(const Json& j, const std::string& path) {
  if (j.is_null()) return 0;
  if (j.contains("depth")) return require_index(j["depth"], path + ".depth");
  const Json& children = require_field(j, "children", path);
  if (!children.is_object()) throw ValidateError("children must be an object", path);
  if (children.empty()) {
    throw ValidateError("cannot infer depth: add a \"depth\" field", path);
  }
  return 1 + morphism_depth(*children.begin(), path + ".children");
}

Json morphism_json(const TruncMorphism& f) {
  if (f.depth == 0) return Json(nullptr);
  Json children = Json::object();
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    for (std::size_t e = 0; e < f.children[i].size(); ++e) {
      children[std::to_string(i) + "," + std::to_string(e)] = morphism_json(f.children[i][e]);
    }
  }
  return Json{{"depth", f.depth}, {"rootMap", map_json(*f.root_map)},
              {"children", std::move(children)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

PolyCode parse_poly_document(const std::string& text) {
  return poly_from_json(parse_json(text), "$");
}

Tree parse_tree_document(const std::string& text) {
  return tree_from_json(parse_json(text), "$");
}

TruncMorphism parse_morphism_document(const std::string& text, const Tree& p, const Tree& q) {
  Json j = parse_json(text);
  return morphism_from_json(j, p, q, morphism_depth(j, "$"), "$");
}

MachineTable parse_machine_document(const std::string& text) {
  Json j = parse_json(text);
  if (!j.is_object()) throw ValidateError("expected an object", "$");
  MachineTable table;
  table.states = require_index(require_field(j, "states", "$"), "$.states");
  table.start = require_index(require_field(j, "start", "$"), "$.start");
  if (j.contains("p")) table.p = tree_from_json(j["p"], "$.p");
  if (j.contains("q")) table.q = tree_from_json(j["q"], "$.q");
  const Json& triples = require_field(j, "triples", "$");
  if (!triples.is_array()) throw ValidateError("triples must be an array", "$");
  std::size_t k = 0;
  for (const Json& tj : triples) {
    std::string tpath = "$.triples[" + std::to_string(k) + "]";
    std::array<std::size_t, 3> key{
        require_index(require_field(tj, "state", tpath), tpath + ".state"),
        require_index(require_field(tj, "pNode", tpath), tpath + ".pNode"),
        require_index(require_field(tj, "qNode", tpath), tpath + ".qNode")};
    MachineTable::Entry entry;
    map_tables_from_json(require_field(tj, "act", tpath), tpath + ".act", entry.on_pos,
                         entry.on_dir);
    const Json& upd = require_field(tj, "upd", tpath);
    if (!upd.is_array()) throw ValidateError("upd must be an array", tpath);
    for (std::size_t i = 0; i < upd.size(); ++i) {
      if (!upd[i].is_array()) throw ValidateError("upd rows must be arrays", tpath);
      std::vector<std::size_t> row;
      for (std::size_t e = 0; e < upd[i].size(); ++e) {
        row.push_back(require_index(
            upd[i][e], tpath + ".upd[" + std::to_string(i) + "][" + std::to_string(e) + "]"));
      }
      entry.upd.push_back(std::move(row));
    }
    if (!table.triples.emplace(key, std::move(entry)).second) {
      throw ValidateError("duplicate triple", tpath);
    }
    ++k;
  }
  return table;
}

Machine bind_machine(const MachineTable& table, Tree p, Tree q) {
  auto shared = std::make_shared<MachineTable>(table);
  auto lookup = [shared](std::size_t s, const Tree& pn,
                         const Tree& qn) -> const MachineTable::Entry& {
    auto it = shared->triples.find({s, pn.node(), qn.node()});
    if (it == shared->triples.end()) {
      throw ValidateError("no action for reachable triple (state " + std::to_string(s) +
                          ", pNode " + std::to_string(pn.node()) + ", qNode " +
                          std::to_string(qn.node()) + ")");
    }
    return it->second;
  };
  auto act = [lookup](std::size_t s, const Tree& pn, const Tree& qn) -> PolyMap {
    const MachineTable::Entry& entry = lookup(s, pn, qn);
    if (entry.on_pos.size() != pn.root().size()) {
      throw ValidateError("act source code mismatch at (state " + std::to_string(s) +
                          ", pNode " + std::to_string(pn.node()) + ", qNode " +
                          std::to_string(qn.node()) + ")");
    }
    return PolyMap(pn.root(), qn.root(), entry.on_pos, entry.on_dir);
  };
  auto upd = [lookup](std::size_t s, const Tree& pn, const Tree& qn, std::size_t i,
                      std::size_t e) -> std::size_t {
    const MachineTable::Entry& entry = lookup(s, pn, qn);
    if (i >= entry.upd.size() || e >= entry.upd[i].size()) {
      throw ValidateError("upd row missing at (state " + std::to_string(s) + ", pNode " +
                          std::to_string(pn.node()) + ", qNode " + std::to_string(qn.node()) +
                          ")");
    }
    return entry.upd[i][e];
  };
  return Machine::finite(std::move(p), std::move(q), table.states, table.start, act, upd);
}

std::string poly_to_json(const PolyCode& p, bool with_kind) {
  Json j = poly_json(p);
  if (with_kind) {
    Json out = Json{{"kind", "poly"}};
    out.update(j);
    return dump(out);
  }
  return dump(j);
}

std::string tree_to_json(const Tree& t, bool with_kind) {
  Json j = tree_json(t);
  if (with_kind) {
    Json out = Json{{"kind", "tree"}};
    out.update(j);
    return dump(out);
  }
  return dump(j);
}

std::string map_to_json(const PolyMap& f) { return dump(map_json(f)); }

std::string morphism_to_json(const TruncMorphism& f, bool with_kind) {
  Json j = morphism_json(f);
  if (with_kind && j.is_object()) {
    Json out = Json{{"kind", "morphism"}};
    out.update(j);
    return dump(out);
  }
  return dump(j);
}

std::string machine_to_json(const Machine& m, bool embed_trees) {
  Json j = Json{{"kind", "machine"},
                {"states", m.state_count()},
                {"start", m.start_index()}};
  if (embed_trees) {
    j["p"] = tree_json(m.source());
    j["q"] = tree_json(m.target());
  }
  Json triples = Json::array();
  for (const ReachableTriple& t : reachable_triples(m)) {
    PolyMap a = m.act(t.state, t.pn, t.qn);
    Json upd = Json::array();
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      Json row = Json::array();
      for (std::size_t e = 0; e < a.target().dirs(a.on_pos(i)); ++e) {
        row.push_back(m.upd_index(t.state, t.pn, t.qn, i, e));
      }
      upd.push_back(std::move(row));
    }
    triples.push_back(Json{{"state", t.state},
                           {"pNode", t.pn.node()},
                           {"qNode", t.qn.node()},
                           {"act", map_json(a)},
                           {"upd", std::move(upd)}});
  }
  j["triples"] = std::move(triples);
  return dump(j);
}

std::string trajectory_to_jsonl(const ProgressiveTrajectory& t) {
  std::ostringstream out;
  for (const ProgressiveStep& s : t.steps) {
    Json j = Json{{"step", s.step},         {"level", s.level},
                  {"position", s.position}, {"direction", s.direction},
                  {"branch", s.grew ? "grow" : "stay"},
                  {"wG", s.gen_weights},    {"wD", s.disc_weights}};
    out << j.dump() << "\n";
  }
  return out.str();
}

DocumentDiagnosis validate_document(const std::string& text) {
  DocumentDiagnosis d;
  try {
    Json j = parse_json(text);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
      return DocumentDiagnosis{false, "", "missing \"kind\" field"};
    }
    d.kind = j["kind"].get<std::string>();
    if (d.kind == "poly") {
      poly_from_json(j, "$");
    } else if (d.kind == "tree") {
      tree_from_json(j, "$");
    } else if (d.kind == "morphism") {
      if (!j.contains("p") || !j.contains("q")) {
        return DocumentDiagnosis{false, d.kind,
                                 "morphism document must embed its trees under \"p\" and \"q\""};
      }
      Tree p = tree_from_json(j["p"], "$.p");
      Tree q = tree_from_json(j["q"], "$.q");
      TruncMorphism f = morphism_from_json(j, p, q, morphism_depth(j, "$"), "$");
      TruncCheck check = validate_trunc(f, p, q, f.depth);
      if (!check.ok) {
        return DocumentDiagnosis{false, d.kind, check.message + " at " + check.path};
      }
    } else if (d.kind == "machine") {
      MachineTable table = parse_machine_document(text);
      if (!table.p || !table.q) {
        return DocumentDiagnosis{false, d.kind,
                                 "machine document must embed its trees under \"p\" and \"q\""};
      }
      MachineCheck check = validate_machine(bind_machine(table, *table.p, *table.q));
      if (!check.ok) return DocumentDiagnosis{false, d.kind, check.message};
    } else {
      return DocumentDiagnosis{false, d.kind, "unknown kind \"" + d.kind + "\""};
    }
  } catch (const Error& err) {
    return DocumentDiagnosis{false, d.kind, err.what()};
  }
  return d;
}

}  // namespace polytree

#include "polytree/coalgebra.hpp"
#include "polytree/errors.hpp"
#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/json_io.hpp"
#include "polytree/laws.hpp"
#include "polytree/machine.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;
using namespace polytree;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("POLYTREE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CLI::ValidationError("POLYTREE_BUDGET", "must be an unsigned integer");
    }
  }
  return 1'000'000;
}

struct Options {
  std::uint64_t budget = 1'000'000;
  std::string format = "json";
};

int cmd_validate(const std::string& file) {
  DocumentDiagnosis d = validate_document(slurp(file));
  Json out{{"valid", d.ok}};
  if (!d.kind.empty()) out["kind"] = d.kind;
  if (!d.ok) out["error"] = d.message;
  std::cout << out.dump(2) << "\n";
  return d.ok ? kOk : kCheckFailed;
}

int cmd_laws(const Options& opt, std::size_t depth, std::uint64_t seed) {
  LawConfig cfg;
  cfg.depth = depth;
  cfg.budget = opt.budget;
  cfg.seed = seed;
  auto results = run_law_suites(cfg);
  bool all_ok = true;
  if (opt.format == "table") {
    for (const auto& r : results) {
      const char* status = r.status == LawStatus::pass   ? "PASS"
                           : r.status == LawStatus::skip ? "SKIP"
                                                         : "FAIL";
      std::cout << status << "  " << r.name;
      if (!r.detail.empty()) std::cout << "  -- " << r.detail;
      std::cout << "\n";
      if (r.status == LawStatus::fail) all_ok = false;
    }
  } else {
    Json out = Json::array();
    for (const auto& r : results) {
      Json j{{"suite", r.name},
             {"status", r.status == LawStatus::pass   ? "pass"
                        : r.status == LawStatus::skip ? "skip"
                                                      : "fail"}};
      if (!r.detail.empty()) j["detail"] = r.detail;
      out.push_back(std::move(j));
      if (r.status == LawStatus::fail) all_ok = false;
    }
    std::cout << out.dump(2) << "\n";
  }
  return all_ok ? kOk : kCheckFailed;
}

int cmd_homs(const Options& opt, const std::string& pfile, const std::string& qfile,
             std::size_t depth, bool count_only) {
  Tree p = parse_tree_document(slurp(pfile));
  Tree q = parse_tree_document(slurp(qfile));
  if (count_only) {
    Count n = trunc_hom_count(p, q, depth);
    std::cout << Json{{"depth", depth}, {"count", n.str()}}.dump(2) << "\n";
    return kOk;
  }
  Budget budget{opt.budget};
  budget.check("enumerate tree morphisms", trunc_hom_count(p, q, depth));
  std::cout << "[";
  bool first = true;
  for_each_trunc_hom(
      p, q, depth,
      [&](const TruncMorphism& f) {
        std::string body = morphism_to_json(f);
        while (!body.empty() && (body.back() == '\n' || body.back() == ' ')) body.pop_back();
        std::cout << (first ? "\n" : ",\n") << body;
        first = false;
        return true;
      },
      budget);
  std::cout << (first ? "]" : "\n]") << "\n";
  return kOk;
}

int cmd_solve(const std::string& treefile, const std::string& mode,
              const std::string& witness_out) {
  Tree t = parse_tree_document(slurp(treefile));
  std::optional<Machine> witness;
  if (mode == "from-y") {
    witness = from_y_witness(t);
  } else if (mode == "to-y") {
    witness = to_y_witness(t);
  } else {
    throw CLI::ValidationError("--mode", "must be from-y or to-y");
  }
  Json out{{"mode", mode}, {"exists", witness.has_value()}};
  if (witness) {
    std::string doc = machine_to_json(*witness, /*embed_trees=*/true);
    out["witness"] = Json::parse(doc);
    if (!witness_out.empty()) write_file(witness_out, doc);
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_check_refine(const Options&, const std::string& witnessfile, const std::string& pfile,
                     const std::string& qfile, std::size_t depth) {
  Tree p = parse_tree_document(slurp(pfile));
  Tree q = parse_tree_document(slurp(qfile));
  std::string text = slurp(witnessfile);
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  bool is_machine = doc.is_object() && (doc.contains("triples") ||
                                        (doc.contains("kind") && doc["kind"] == "machine"));
  if (is_machine) {
    Machine m = bind_machine(parse_machine_document(text), p, q);
    MachineCheck check = validate_machine(m);
    if (!check.ok) {
      std::cout << Json{{"valid", false}, {"error", check.message}}.dump(2) << "\n";
      return kCheckFailed;
    }
    TruncMorphism f = unfold_machine(m, depth);
    TruncCheck tc = validate_trunc(f, p, q, depth);
    if (!tc.ok) {
      std::cout << Json{{"valid", false}, {"error", tc.message + " at " + tc.path}}.dump(2)
                << "\n";
      return kCheckFailed;
    }
    std::cout << Json{{"valid", true}, {"depth", depth}}.dump(2) << "\n";
    return kOk;
  }
  TruncMorphism f = parse_morphism_document(text, p, q);
  if (f.depth < depth) {
    std::cout << Json{{"valid", false},
                      {"error", "morphism document has depth " + std::to_string(f.depth) +
                                    ", need " + std::to_string(depth)}}
                     .dump(2)
              << "\n";
    return kCheckFailed;
  }
  TruncMorphism g = restrict_depth(f, depth);
  TruncCheck tc = validate_trunc(g, p, q, depth);
  if (!tc.ok) {
    std::cout << Json{{"valid", false}, {"error", tc.message + " at " + tc.path}}.dump(2) << "\n";
    return kCheckFailed;
  }
  std::cout << Json{{"valid", true}, {"depth", depth}}.dump(2) << "\n";
  return kOk;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

int cmd_trace(const std::string& treefile, const std::string& machinefile) {
  Tree tree = parse_tree_document(slurp(treefile));
  std::optional<Machine> machine;
  Tree unit = constant_tree(PolyCode::y());
  if (!machinefile.empty()) {
    MachineTable table = parse_machine_document(slurp(machinefile));
    Tree src = table.p ? *table.p : unit;
    machine = bind_machine(table, src, tree);
  }

  Tree node = tree;
  Machine::State state;
  if (machine) state = machine->start();
  emit(Json{{"event", "start"}, {"node", node.node()}, {"poly", node.root().describe()}});

  auto read_index = [&](const std::string& prompt, std::size_t bound,
                        std::optional<std::size_t>& out) -> bool {
    // false = end of session (quit or EOF)
    while (true) {
      std::cerr << prompt;
      std::string line;
      if (!std::getline(std::cin, line)) {
        emit(Json{{"event", "eof"}});
        return false;
      }
      std::istringstream iss(line);
      std::string token;
      iss >> token;
      if (token == "quit" || token == "q") {
        emit(Json{{"event", "quit"}});
        return false;
      }
      try {
        std::size_t v = std::stoull(token);
        if (v < bound) {
          out = v;
          return true;
        }
      } catch (...) {
      }
      std::cerr << "  invalid selection, expected 0.." << bound - 1 << " or quit\n";
    }
  };

  while (true) {
    const PolyCode& code = node.root();
    if (code.size() == 0) {
      emit(Json{{"event", "terminated"}, {"reason", "no positions"}, {"node", node.node()}});
      return kOk;
    }
    std::size_t position = 0;
    if (machine) {
      PolyMap act = machine->act(state, machine->source(), node);
      position = act.on_pos(0);
      std::cerr << "machine plays position " << position;
      if (code.at(position).label) std::cerr << " (" << *code.at(position).label << ")";
      std::cerr << "\n";
    } else {
      std::cerr << "positions at node " << node.node() << " [" << code.describe() << "]:\n";
      for (std::size_t i = 0; i < code.size(); ++i) {
        std::cerr << "  [" << i << "] "
                  << (code.at(i).label ? *code.at(i).label : "position " + std::to_string(i))
                  << " (" << code.dirs(i) << " directions)\n";
      }
      std::optional<std::size_t> pick;
      if (!read_index("position> ", code.size(), pick)) return kOk;
      position = *pick;
    }
    if (code.dirs(position) == 0) {
      emit(Json{{"event", "step"}, {"node", node.node()}, {"position", position}});
      emit(Json{{"event", "terminated"}, {"reason", "no directions"}, {"node", node.node()}});
      return kOk;
    }
    const auto& entry = code.at(position);
    std::cerr << "directions at position " << position << ":\n";
    for (std::size_t d = 0; d < entry.dirs; ++d) {
      std::cerr << "  [" << d << "] "
                << (entry.dir_labels ? (*entry.dir_labels)[d] : "direction " + std::to_string(d))
                << "\n";
    }
    std::optional<std::size_t> dir;
    if (!read_index("direction> ", entry.dirs, dir)) return kOk;
    Tree next = node.child(position, *dir);
    emit(Json{{"event", "step"},
              {"node", node.node()},
              {"position", position},
              {"direction", *dir},
              {"next", next.node()}});
    if (machine) {
      state = machine->upd(state, machine->source(), node, 0, *dir);
    }
    node = next;
  }
}

ProgressiveConfig load_progressive_config(const std::string& file) {
  ProgressiveConfig cfg;
  if (file.empty()) return cfg;
  Json j = Json::parse(slurp(file));
  if (j.contains("latentDim")) cfg.latent_dim = j["latentDim"].get<std::size_t>();
  if (j.contains("resolutions")) cfg.resolutions = j["resolutions"].get<std::vector<std::size_t>>();
  if (j.contains("quantLevels")) cfg.quant_levels = j["quantLevels"].get<std::size_t>();
  if (j.contains("quantStep")) cfg.quant_step = j["quantStep"].get<double>();
  if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
  if (j.contains("learningRate")) cfg.learning_rate = j["learningRate"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  return cfg;
}

int cmd_demo(const std::string& configfile, std::size_t steps,
             std::optional<std::uint64_t> seed) {
  ProgressiveConfig cfg = load_progressive_config(configfile);
  if (seed) cfg.seed = *seed;
  ProgressiveTrajectory log = progressive_demo(cfg, steps);
  std::cout << trajectory_to_jsonl(log);
  return kOk;
}

int cmd_fixture(const Options& opt, const std::string& name, std::size_t strings,
                std::size_t ints, std::size_t levels, std::size_t heap,
                const std::string& takes_csv, const std::string& dirs_csv) {
  auto parse_csv = [](const std::string& csv) {
    std::vector<std::size_t> out;
    std::istringstream iss(csv);
    std::string item;
    while (std::getline(iss, item, ',')) {
      if (!item.empty()) out.push_back(std::stoull(item));
    }
    return out;
  };
  if (name == "login") {
    std::cout << tree_to_json(login_tree(strings, ints), true);
  } else if (name == "readonly") {
    std::cout << tree_to_json(readonly_tree(strings), true);
  } else if (name == "refinement") {
    std::cout << machine_to_json(readonly_refinement(strings, ints));
  } else if (name == "cell") {
    std::cout << tree_to_json(cell_tree(levels), true);
  } else if (name == "organ") {
    std::cout << machine_to_json(organ_machine(levels, Budget{opt.budget}));
  } else if (name == "nim") {
    std::cout << tree_to_json(nim_tree({heap, parse_csv(takes_csv)}), true);
  } else if (name == "nim-outcomes") {
    std::cout << tree_to_json(nim_with_outcomes({heap, parse_csv(takes_csv)}), true);
  } else if (name == "const") {
    std::cout << tree_to_json(constant_tree(PolyCode::from_dirs(parse_csv(dirs_csv))), true);
  } else {
    throw CLI::ValidationError(
        "fixture", "unknown fixture; expected login, readonly, refinement, cell, organ, nim, "
                   "nim-outcomes, or const");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polytree: polynomial functors, evolving interfaces, and their morphisms"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  int rc = kOk;

  try {
    opt.budget = default_budget();
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  app.add_option("--budget", opt.budget, "size budget for derived objects");
  app.add_option("--format", opt.format, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // validate
  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "validate a document (kind field)");
  validate_cmd->add_option("file", file, "document file")->required();
  validate_cmd->callback([&]() { rc = cmd_validate(file); });

  // laws
  std::size_t laws_depth = 3;
  std::uint64_t laws_seed = 17;
  auto* laws_cmd = app.add_subcommand("laws", "run every law suite and print a pass/fail matrix");
  laws_cmd->add_option("--depth", laws_depth, "tower depth (at most 4)")
      ->check(CLI::Range(std::size_t{0}, std::size_t{4}));
  laws_cmd->add_option("--seed", laws_seed, "seed for randomized cases");
  laws_cmd->callback([&]() { rc = cmd_laws(opt, laws_depth, laws_seed); });

  // homs
  std::string pfile, qfile;
  std::size_t homs_depth = 3;
  bool count_only = false;
  auto* homs_cmd = app.add_subcommand("homs", "enumerate or count morphisms between two trees");
  homs_cmd->add_option("p", pfile, "source tree file")->required();
  homs_cmd->add_option("q", qfile, "target tree file")->required();
  homs_cmd->add_option("--depth", homs_depth, "tower depth");
  homs_cmd->add_flag("--count", count_only, "print the exact count only");
  homs_cmd->callback([&]() { rc = cmd_homs(opt, pfile, qfile, homs_depth, count_only); });

  // solve
  std::string solve_file, solve_mode = "from-y", witness_out;
  auto* solve_cmd = app.add_subcommand("solve", "decide strategy existence and emit a witness");
  solve_cmd->add_option("tree", solve_file, "tree file")->required();
  solve_cmd->add_option("--mode", solve_mode, "from-y or to-y")
      ->check(CLI::IsMember({"from-y", "to-y"}));
  solve_cmd->add_option("--witness-out", witness_out, "write the witness machine to a file");
  solve_cmd->callback([&]() { rc = cmd_solve(solve_file, solve_mode, witness_out); });

  // trace
  std::string trace_file, trace_machine;
  auto* trace_cmd = app.add_subcommand("trace", "step through a tree interactively");
  trace_cmd->add_option("tree", trace_file, "tree file")->required();
  trace_cmd->add_option("--machine", trace_machine, "machine that plays the positions");
  trace_cmd->callback([&]() { rc = cmd_trace(trace_file, trace_machine); });

  // check-refine
  std::string witness_file, rp_file, rq_file;
  std::size_t refine_depth = 3;
  auto* refine_cmd =
      app.add_subcommand("check-refine", "validate a machine or morphism as a refinement");
  refine_cmd->add_option("witness", witness_file, "machine or morphism file")->required();
  refine_cmd->add_option("p", rp_file, "source tree file")->required();
  refine_cmd->add_option("q", rq_file, "target tree file")->required();
  refine_cmd->add_option("--depth", refine_depth, "unfolding depth to check");
  refine_cmd->callback(
      [&]() { rc = cmd_check_refine(opt, witness_file, rp_file, rq_file, refine_depth); });

  // demo
  std::string demo_kind, demo_config;
  std::size_t demo_steps = 200;
  std::optional<std::uint64_t> demo_seed;
  std::uint64_t demo_seed_value = 0;
  auto* demo_cmd = app.add_subcommand("demo", "run a built-in demonstration");
  demo_cmd->add_option("which", demo_kind, "demo name (progressive)")->required();
  demo_cmd->add_option("--steps", demo_steps, "number of rounds");
  auto* seed_opt = demo_cmd->add_option("--seed", demo_seed_value, "seed override");
  demo_cmd->add_option("--config", demo_config, "config file (JSON)");
  demo_cmd->callback([&]() {
    if (demo_kind != "progressive") {
      throw CLI::ValidationError("demo", "unknown demo \"" + demo_kind + "\"");
    }
    if (seed_opt->count() > 0) demo_seed = demo_seed_value;
    rc = cmd_demo(demo_config, demo_steps, demo_seed);
  });

  // fixture
  std::string fixture_name, takes_csv = "1,2", dirs_csv = "1";
  std::size_t fx_strings = 3, fx_ints = 2, fx_levels = 2, fx_heap = 4;
  auto* fixture_cmd = app.add_subcommand("fixture", "emit a built-in example document");
  fixture_cmd
      ->add_option("name", fixture_name,
                   "login | readonly | refinement | cell | organ | nim | nim-outcomes | const")
      ->required();
  fixture_cmd->add_option("--strings", fx_strings, "string alphabet size");
  fixture_cmd->add_option("--ints", fx_ints, "integer alphabet size");
  fixture_cmd->add_option("--levels", fx_levels, "concentration levels");
  fixture_cmd->add_option("--heap", fx_heap, "starting heap");
  fixture_cmd->add_option("--takes", takes_csv, "comma-separated legal takes");
  fixture_cmd->add_option("--dirs", dirs_csv, "direction counts for a constant tree");
  fixture_cmd->callback([&]() {
    rc = cmd_fixture(opt, fixture_name, fx_strings, fx_ints, fx_levels, fx_heap, takes_csv,
                     dirs_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << e.what() << "\n";
    return kBudget;
  } catch (const ValidateError& e) {
    std::cout << Json{{"valid", false}, {"error", e.what()}}.dump(2) << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kCheckFailed;
  }
  return rc;
}

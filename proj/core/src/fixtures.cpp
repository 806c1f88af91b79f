#include "polytree/fixtures.hpp"

#include "polytree/errors.hpp"
#include "polytree/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace polytree {

namespace {

PositionEntry labeled(std::string label, std::size_t dirs,
                      std::vector<std::string> dir_labels = {}) {
  PositionEntry e;
  e.label = std::move(label);
  e.dirs = dirs;
  if (!dir_labels.empty()) e.dir_labels = std::move(dir_labels);
  return e;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

PolyCode session_root() {
  return PolyCode({labeled("login", 2, {"success", "failure"}), labeled("quit", 0)});
}

PolyCode authenticated_code(std::size_t str_n, std::size_t int_n) {
  std::vector<PositionEntry> entries;
  for (std::size_t s = 0; s < str_n; ++s) {
    entries.push_back(labeled("query:s" + std::to_string(s), str_n, numbered("result:s", str_n)));
  }
  for (std::size_t s = 0; s < str_n; ++s) {
    entries.push_back(labeled("set:s" + std::to_string(s), int_n, numbered("status:", int_n)));
  }
  entries.push_back(labeled("logout", 0));
  return PolyCode(std::move(entries));
}

PolyCode readonly_code(std::size_t str_n) {
  std::vector<PositionEntry> entries;
  for (std::size_t s = 0; s < str_n; ++s) {
    entries.push_back(labeled("query:s" + std::to_string(s), str_n, numbered("result:s", str_n)));
  }
  entries.push_back(labeled("logout", 0));
  return PolyCode(std::move(entries));
}

std::vector<std::vector<std::size_t>> rows_to(const PolyCode& code, std::size_t target) {
  std::vector<std::vector<std::size_t>> rows(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) rows[i].assign(code.dirs(i), target);
  return rows;
}

}  // namespace

Tree login_tree(std::size_t str_n, std::size_t int_n) {
  if (str_n < 1 || int_n < 1) throw ValidateError("alphabet sizes must be at least 1");
  FiniteTreeData data;
  data.root = 0;
  data.code = {session_root(), authenticated_code(str_n, int_n)};
  data.next = {{{1, 0}, {}}, rows_to(data.code[1], 1)};
  return Tree::finite(std::move(data));
}

Tree readonly_tree(std::size_t str_n) {
  if (str_n < 1) throw ValidateError("alphabet sizes must be at least 1");
  FiniteTreeData data;
  data.root = 0;
  data.code = {session_root(), readonly_code(str_n)};
  data.next = {{{1, 0}, {}}, rows_to(data.code[1], 1)};
  return Tree::finite(std::move(data));
}

Machine readonly_refinement(std::size_t str_n, std::size_t int_n) {
  Tree ro = readonly_tree(str_n);
  Tree full = login_tree(str_n, int_n);
  auto act = [str_n](std::size_t, const Tree& pn, const Tree& qn) -> PolyMap {
    if (pn.node() == 0 && qn.node() == 0) {
      return PolyMap(pn.root(), qn.root(), {0, 1}, {{0, 1}, {}});
    }
    if (pn.node() == 1 && qn.node() == 1) {
      // Queries map to the same query, logout to logout; the write block
      // of the full protocol stays out of the image.
      std::vector<std::size_t> on_pos(str_n + 1);
      std::vector<std::vector<std::size_t>> on_dir(str_n + 1);
      for (std::size_t s = 0; s < str_n; ++s) {
        on_pos[s] = s;
        on_dir[s].resize(str_n);
        for (std::size_t r = 0; r < str_n; ++r) on_dir[s][r] = r;
      }
      on_pos[str_n] = 2 * str_n;  // logout
      return PolyMap(pn.root(), qn.root(), std::move(on_pos), std::move(on_dir));
    }
    throw Error("refinement machine reached an unexpected node pair");
  };
  auto upd = [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
    return 0;
  };
  return Machine::finite(std::move(ro), std::move(full), 1, 0, act, upd);
}

Tree cell_tree(std::size_t levels) {
  if (levels < 2) throw ValidateError("cell fixture needs at least 2 concentration levels");
  const std::size_t L = levels;
  const std::size_t high = L - 1;

  std::vector<PositionEntry> stem;
  std::vector<PositionEntry> neuron;
  for (std::size_t x = 0; x < L; ++x) {
    stem.push_back(labeled("out:" + std::to_string(x), L * L * L));
    neuron.push_back(labeled("nt:" + std::to_string(x), L));
  }

  FiniteTreeData data;
  data.root = 0;
  data.code = {PolyCode(std::move(stem)), PolyCode(std::move(neuron)), PolyCode::zero()};

  // Node 0: the stem cell. Receptor priority on simultaneous highs:
  // apoptosis, then neuron, then growth.
  std::vector<std::vector<std::size_t>> cell_rows(L);
  for (std::size_t x = 0; x < L; ++x) {
    cell_rows[x].resize(L * L * L);
    for (std::size_t d = 0; d < L * L * L; ++d) {
      std::size_t l1 = d / (L * L);
      std::size_t l3 = d % L;
      std::size_t target = 0;  // growth: the cell itself
      if (l3 == high) {
        target = 2;  // apoptosis
      } else if (l1 == high) {
        target = 1;  // neuron
      }
      cell_rows[x][d] = target;
    }
  }
  data.next = {std::move(cell_rows), rows_to(data.code[1], 1), {}};
  return Tree::finite(std::move(data));
}

Machine organ_machine(std::size_t levels, const Budget& budget) {
  const std::size_t L = levels;
  Tree cell = cell_tree(levels);
  TensorProvenance inner = tensor_tree_with_provenance(cell, cell, budget);
  TensorProvenance outer = tensor_tree_with_provenance(inner.tree, cell, budget);
  Tree organ = constant_tree(PolyCode::monomial(L, L));

  auto cell_data = cell.finite_data();
  auto inner_factors = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(
      std::move(inner.factors));
  auto outer_factors = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(
      std::move(outer.factors));

  auto act = [=](std::size_t, const Tree& pn, const Tree& qn) -> PolyMap {
    auto [n12, n3] = (*outer_factors)[pn.node()];
    auto [n1, n2] = (*inner_factors)[n12];
    const PolyCode& c1 = cell_data->code[n1];
    const PolyCode& c2 = cell_data->code[n2];
    const PolyCode& c3 = cell_data->code[n3];
    if (c1.size() == 0 || c2.size() == 0 || c3.size() == 0) {
      return PolyMap(pn.root(), qn.root(), {}, {});  // a dead cell silences the organ
    }
    // Every living component outputs one of the L levels, and the signal
    // is broadcast to each of its receptors.
    std::vector<std::size_t> on_pos(pn.root().size());
    std::vector<std::vector<std::size_t>> on_dir(pn.root().size());
    auto cell_dir = [&](const PolyCode& c, std::size_t x, std::size_t sig) -> std::size_t {
      if (c.dirs(x) == L) return sig;           // neuron: one receptor
      return (sig * L + sig) * L + sig;         // stem cell: the triple
    };
    for (std::size_t x1 = 0; x1 < L; ++x1) {
      for (std::size_t x2 = 0; x2 < L; ++x2) {
        for (std::size_t x3 = 0; x3 < L; ++x3) {
          std::size_t s = (x1 * L + x2) * L + x3;
          on_pos[s] = std::max({x1, x2, x3});
          on_dir[s].resize(L);
          for (std::size_t sig = 0; sig < L; ++sig) {
            std::size_t d12 = cell_dir(c1, x1, sig) * c2.dirs(x2) + cell_dir(c2, x2, sig);
            on_dir[s][sig] = d12 * c3.dirs(x3) + cell_dir(c3, x3, sig);
          }
        }
      }
    }
    return PolyMap(pn.root(), qn.root(), std::move(on_pos), std::move(on_dir));
  };
  auto upd = [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
    return 0;
  };
  return Machine::finite(outer.tree, std::move(organ), 1, 0, act, upd);
}

namespace {

std::vector<std::size_t> legal_takes(const NimRule& rule, std::size_t heap) {
  std::vector<std::size_t> out;
  for (std::size_t m : rule.takes) {
    if (m >= 1 && m <= heap) out.push_back(m);
  }
  return out;
}

void validate_rule(const NimRule& rule) {
  if (rule.takes.empty()) throw ValidateError("takes must be nonempty");
  for (std::size_t m : rule.takes) {
    if (m == 0) throw ValidateError("takes must be positive");
  }
}

NimRule normalized(const NimRule& rule) {
  validate_rule(rule);
  NimRule out = rule;
  std::sort(out.takes.begin(), out.takes.end());
  out.takes.erase(std::unique(out.takes.begin(), out.takes.end()), out.takes.end());
  return out;
}

Tree nim_tree_impl(const NimRule& rule, bool with_outcomes) {
  NimRule norm = normalized(rule);

  // Node v is the interface with v objects left and us to move.
  FiniteTreeData data;
  data.root = norm.heap;
  data.code.resize(norm.heap + 1);
  data.next.resize(norm.heap + 1);
  for (std::size_t v = 0; v <= norm.heap; ++v) {
    std::vector<PositionEntry> entries;
    std::vector<std::vector<std::size_t>> rows;
    for (std::size_t m : legal_takes(norm, v)) {
      std::size_t left = v - m;
      std::vector<std::size_t> opp = legal_takes(norm, left);
      PositionEntry e = labeled("take" + std::to_string(m), opp.size());
      std::vector<std::string> dl;
      std::vector<std::size_t> row;
      for (std::size_t m2 : opp) {
        dl.push_back("opp" + std::to_string(m2));
        row.push_back(left - m2);
      }
      if (!dl.empty()) e.dir_labels = std::move(dl);
      entries.push_back(std::move(e));
      rows.push_back(std::move(row));
    }
    if (with_outcomes) {
      entries.push_back(labeled("concede", 0));
      rows.push_back({});
    }
    data.code[v] = PolyCode(std::move(entries));
    data.next[v] = std::move(rows);
  }
  return Tree::finite(std::move(data));
}

}  // namespace

Tree nim_tree(const NimRule& rule) { return nim_tree_impl(rule, false); }

Tree nim_with_outcomes(const NimRule& rule) { return nim_tree_impl(rule, true); }

namespace {

enum class Verdict : char { unknown = 0, yes, no };

bool mover_wins(const NimRule& rule, std::size_t heap, std::vector<Verdict>& memo) {
  if (memo[heap] != Verdict::unknown) return memo[heap] == Verdict::yes;
  bool win = false;
  for (std::size_t m : legal_takes(rule, heap)) {
    std::size_t left = heap - m;
    if (left == 0) {
      win = true;
      break;
    }
    bool survives_all = true;
    for (std::size_t m2 : legal_takes(rule, left)) {
      std::size_t after = left - m2;
      if (after == 0 || !mover_wins(rule, after, memo)) {
        survives_all = false;
        break;
      }
    }
    if (survives_all) {
      win = true;
      break;
    }
  }
  memo[heap] = win ? Verdict::yes : Verdict::no;
  return win;
}

bool responder_survives_rec(const NimRule& rule, std::size_t heap, std::vector<Verdict>& memo) {
  if (memo[heap] != Verdict::unknown) return memo[heap] == Verdict::yes;
  bool ok = true;
  for (std::size_t m : legal_takes(rule, heap)) {
    std::size_t left = heap - m;
    if (left == 0) {
      ok = false;  // the move ends the game with no reply available
      break;
    }
    bool answered = false;
    for (std::size_t m2 : legal_takes(rule, left)) {
      std::size_t after = left - m2;
      if (after == 0 || responder_survives_rec(rule, after, memo)) {
        answered = true;
        break;
      }
    }
    if (!answered) {
      ok = false;
      break;
    }
  }
  memo[heap] = ok ? Verdict::yes : Verdict::no;
  return ok;
}

}  // namespace

bool nim_first_player_wins(const NimRule& rule) {
  NimRule norm = normalized(rule);
  std::vector<Verdict> memo(norm.heap + 1, Verdict::unknown);
  return mover_wins(norm, norm.heap, memo);
}

bool nim_responder_survives(const NimRule& rule) {
  NimRule norm = normalized(rule);
  std::vector<Verdict> memo(norm.heap + 1, Verdict::unknown);
  return responder_survives_rec(norm, norm.heap, memo);
}

void validate(const ProgressiveConfig& cfg) {
  if (cfg.latent_dim < 1) throw ValidateError("latent_dim must be at least 1");
  if (cfg.resolutions.empty()) throw ValidateError("resolutions must be nonempty");
  for (std::size_t l = 0; l + 1 < cfg.resolutions.size(); ++l) {
    if (cfg.resolutions[l] >= cfg.resolutions[l + 1]) {
      throw ValidateError("resolutions must be strictly increasing");
    }
  }
  if (cfg.resolutions[0] < 1) throw ValidateError("resolutions must be positive");
  if (cfg.quant_levels < 1 || cfg.quant_levels % 2 == 0) {
    throw ValidateError("quant_levels must be odd so the grid is symmetric about 0");
  }
  if (cfg.quant_step <= 0) throw ValidateError("quant_step must be positive");
  if (cfg.threshold < 0) throw ValidateError("threshold must be nonnegative");
  std::size_t widest = std::max(cfg.resolutions.back(), cfg.latent_dim);
  if (pow_count(Count(cfg.quant_levels), widest) > Count(1'000'000)) {
    throw ValidateError("the signal grid is too large; shrink the resolutions or the grid");
  }
}

namespace {

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

double level_value(const ProgressiveConfig& cfg, std::size_t idx) {
  double center = static_cast<double>(cfg.quant_levels - 1) / 2.0;
  return (static_cast<double>(idx) - center) * cfg.quant_step;
}

std::size_t quantize(const ProgressiveConfig& cfg, double x) {
  double center = static_cast<double>(cfg.quant_levels - 1) / 2.0;
  double idx = std::round(x / cfg.quant_step + center);
  if (idx < 0) return 0;
  if (idx > static_cast<double>(cfg.quant_levels - 1)) return cfg.quant_levels - 1;
  return static_cast<std::size_t>(idx);
}

}  // namespace

PolyCode channel_poly(const ProgressiveConfig& cfg, std::size_t n) {
  std::size_t grid = pow_size(cfg.quant_levels, n);
  return PolyCode::monomial(grid, grid);
}

std::vector<double> decode_signal(const ProgressiveConfig& cfg, std::size_t n,
                                  std::size_t index) {
  std::vector<double> out(n);
  for (std::size_t k = n; k-- > 0;) {
    out[k] = level_value(cfg, index % cfg.quant_levels);
    index /= cfg.quant_levels;
  }
  return out;
}

std::size_t encode_signal(const ProgressiveConfig& cfg, const std::vector<double>& values) {
  std::size_t index = 0;
  for (double v : values) index = index * cfg.quant_levels + quantize(cfg, v);
  return index;
}

Tree progressive_tree(const ProgressiveConfig& cfg) {
  validate(cfg);
  const std::size_t last = cfg.resolutions.size() - 1;
  FiniteTreeData data;
  data.root = 0;
  data.code.resize(cfg.resolutions.size());
  data.next.resize(cfg.resolutions.size());
  for (std::size_t l = 0; l <= last; ++l) {
    std::size_t n = cfg.resolutions[l];
    data.code[l] = channel_poly(cfg, n);
    std::size_t grid = data.code[l].size();
    data.next[l].resize(grid);
    for (std::size_t x = 0; x < grid; ++x) {
      data.next[l][x].resize(grid);
      for (std::size_t v = 0; v < grid; ++v) {
        bool grow = false;
        if (l < last) {
          std::vector<double> cot = decode_signal(cfg, n, v);
          double sup = 0;
          for (double c : cot) sup = std::max(sup, std::abs(c));
          grow = sup <= cfg.threshold;
        }
        data.next[l][x][v] = grow ? l + 1 : l;
      }
    }
  }
  return Tree::finite(std::move(data));
}

namespace {

std::vector<double> draw_weights(std::uint64_t seed, std::size_t count) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::vector<double> w(count);
  for (auto& x : w) x = (static_cast<double>(rng() % 9) - 4.0) / 10.0;
  return w;
}

}  // namespace

std::vector<double> initial_generator_weights(const ProgressiveConfig& cfg) {
  return draw_weights(cfg.seed, cfg.resolutions.back() * cfg.latent_dim);
}

std::vector<double> initial_discriminator_weights(const ProgressiveConfig& cfg) {
  return draw_weights(cfg.seed + 1, cfg.resolutions.back());
}

Machine progressive_generator(const ProgressiveConfig& cfg, Tree target,
                              std::vector<double> weights) {
  validate(cfg);
  const std::size_t k = cfg.latent_dim;
  Tree source = constant_tree(channel_poly(cfg, k));
  auto act = [cfg, k](const Machine::State& s, const Tree& pn, const Tree& qn) -> PolyMap {
    const auto& w = *std::any_cast<std::vector<double>>(&s);
    std::size_t n = cfg.resolutions[qn.node()];
    std::size_t latents = pn.root().size();
    std::size_t images = qn.root().size();
    std::vector<std::size_t> on_pos(latents);
    std::vector<std::vector<std::size_t>> on_dir(latents);
    for (std::size_t zi = 0; zi < latents; ++zi) {
      std::vector<double> z = decode_signal(cfg, k, zi);
      std::vector<double> x(n, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) x[r] += w[r * k + c] * z[c];
      }
      on_pos[zi] = encode_signal(cfg, x);
      on_dir[zi].resize(images);
      for (std::size_t vi = 0; vi < images; ++vi) {
        std::vector<double> v = decode_signal(cfg, n, vi);
        std::vector<double> back(k, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
          for (std::size_t r = 0; r < n; ++r) back[c] += w[r * k + c] * v[r];
        }
        on_dir[zi][vi] = encode_signal(cfg, back);
      }
    }
    return PolyMap(pn.root(), qn.root(), std::move(on_pos), std::move(on_dir));
  };
  auto upd = [cfg, k](const Machine::State& s, const Tree&, const Tree& qn, std::size_t zi,
                      std::size_t vi) -> Machine::State {
    std::vector<double> w = *std::any_cast<std::vector<double>>(&s);
    std::size_t n = cfg.resolutions[qn.node()];
    std::vector<double> z = decode_signal(cfg, k, zi);
    std::vector<double> v = decode_signal(cfg, n, vi);
    // Ascent along the transposed Jacobian of the forward pass.
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < k; ++c) w[r * k + c] += cfg.learning_rate * v[r] * z[c];
    }
    return w;
  };
  return Machine::opaque(std::move(source), std::move(target), std::move(weights), act, upd);
}

Machine progressive_generator(const ProgressiveConfig& cfg) {
  return progressive_generator(cfg, progressive_tree(cfg), initial_generator_weights(cfg));
}

Machine progressive_discriminator(const ProgressiveConfig& cfg, Tree source,
                                  std::vector<double> weights) {
  validate(cfg);
  Tree target = constant_tree(channel_poly(cfg, 1));
  auto act = [cfg](const Machine::State& s, const Tree& pn, const Tree& qn) -> PolyMap {
    const auto& w = *std::any_cast<std::vector<double>>(&s);
    std::size_t n = cfg.resolutions[pn.node()];
    std::size_t images = pn.root().size();
    std::vector<std::size_t> on_pos(images);
    std::vector<std::vector<std::size_t>> on_dir(images);
    for (std::size_t xi = 0; xi < images; ++xi) {
      std::vector<double> x = decode_signal(cfg, n, xi);
      double score = 0;
      for (std::size_t r = 0; r < n; ++r) score += w[r] * x[r];
      on_pos[xi] = encode_signal(cfg, {score});
      on_dir[xi].resize(qn.root().dirs(0));
      for (std::size_t ui = 0; ui < on_dir[xi].size(); ++ui) {
        double u = decode_signal(cfg, 1, ui)[0];
        std::vector<double> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = w[r] * u;
        on_dir[xi][ui] = encode_signal(cfg, v);
      }
    }
    return PolyMap(pn.root(), qn.root(), std::move(on_pos), std::move(on_dir));
  };
  auto upd = [cfg](const Machine::State& s, const Tree& pn, const Tree&, std::size_t xi,
                   std::size_t ui) -> Machine::State {
    std::vector<double> w = *std::any_cast<std::vector<double>>(&s);
    std::size_t n = cfg.resolutions[pn.node()];
    std::vector<double> x = decode_signal(cfg, n, xi);
    double u = decode_signal(cfg, 1, ui)[0];
    for (std::size_t r = 0; r < n; ++r) w[r] -= cfg.learning_rate * u * x[r];
    return w;
  };
  return Machine::opaque(std::move(source), std::move(target), std::move(weights), act, upd);
}

Machine progressive_discriminator(const ProgressiveConfig& cfg) {
  return progressive_discriminator(cfg, progressive_tree(cfg),
                                   initial_discriminator_weights(cfg));
}

ProgressiveTrajectory progressive_demo(const ProgressiveConfig& cfg, std::size_t steps) {
  validate(cfg);
  Tree ladder = progressive_tree(cfg);
  Machine gen = progressive_generator(cfg, ladder, initial_generator_weights(cfg));
  Machine disc = progressive_discriminator(cfg, ladder, initial_discriminator_weights(cfg));
  Machine joint = compose_machines(gen, disc);

  const Tree& latents = gen.source();
  const Tree& scalar = disc.target();
  const std::size_t latent_count = latents.root().size();
  const std::size_t out_dirs = scalar.root().dirs(0);

  std::mt19937 rng(static_cast<std::uint32_t>(cfg.seed + 2));
  Machine::State state = joint.start();

  ProgressiveTrajectory log;
  log.config = cfg;
  log.steps.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto& cs = *std::any_cast<CompositeState>(&state);
    std::size_t level = cs.middle.node();
    std::size_t zi = rng() % latent_count;
    std::size_t ui = rng() % out_dirs;

    PolyMap gen_act = gen.act(cs.first, latents, cs.middle);
    PolyMap disc_act = disc.act(cs.second, cs.middle, scalar);
    std::size_t xi = gen_act.on_pos(zi);
    std::size_t vi = disc_act.on_dir(xi, ui);

    state = joint.upd(state, latents, scalar, zi, ui);
    const auto& after = *std::any_cast<CompositeState>(&state);

    ProgressiveStep rec;
    rec.step = t;
    rec.level = level;
    rec.level_after = after.middle.node();
    rec.latent = zi;
    rec.position = xi;
    rec.direction = vi;
    rec.out_direction = ui;
    rec.grew = rec.level_after != level;
    rec.gen_weights = *std::any_cast<std::vector<double>>(&after.first);
    rec.disc_weights = *std::any_cast<std::vector<double>>(&after.second);
    log.steps.push_back(std::move(rec));
  }
  return log;
}

}  // namespace polytree

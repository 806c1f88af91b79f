#include "polytree/tree.hpp"

#include "polytree/errors.hpp"
#include "polytree/index.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace polytree {

namespace {
const Budget kUnbounded{std::numeric_limits<std::uint64_t>::max()};
}

struct LazyNodeImpl {
  explicit LazyNodeImpl(Tree::LazyGen g) : gen(std::move(g)) {}

  Tree::LazyGen gen;
  std::mutex mu;
  bool forced = false;
  PolyCode code;
  std::function<Tree(std::size_t, std::size_t)> childgen;
  std::map<std::pair<std::size_t, std::size_t>, Tree> memo;

  void force_locked() {
    if (forced) return;
    auto r = gen();
    code = std::move(r.first);
    childgen = std::move(r.second);
    forced = true;
    gen = nullptr;
  }

  const PolyCode& root() {
    std::lock_guard<std::mutex> lock(mu);
    force_locked();
    return code;  // written once, stable after forcing
  }

  Tree child(std::size_t i, std::size_t d) {
    std::lock_guard<std::mutex> lock(mu);
    force_locked();
    if (i >= code.size() || d >= code.dirs(i)) {
      throw ValidateError("child (i=" + std::to_string(i) + ",d=" + std::to_string(d) +
                          ") out of range for " + code.describe());
    }
    auto key = std::make_pair(i, d);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Tree c = childgen(i, d);
    memo.emplace(key, c);
    return c;
  }
};

void validate(const FiniteTreeData& t) {
  if (t.code.empty()) throw ValidateError("tree must have at least one node");
  if (t.root >= t.code.size()) throw ValidateError("root index out of range");
  if (t.next.size() != t.code.size()) {
    throw ValidateError("next must have one entry per node");
  }
  for (std::size_t n = 0; n < t.code.size(); ++n) {
    validate(t.code[n]);
    const auto& rows = t.next[n];
    if (rows.size() != t.code[n].size()) {
      std::size_t i = rows.size() < t.code[n].size() ? rows.size() : 0;
      if (rows.size() < t.code[n].size()) {
        throw ValidateError("next not total at node " + std::to_string(n) + ", (i=" +
                            std::to_string(i) + ",d=0)");
      }
      throw ValidateError("next has extra rows at node " + std::to_string(n));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != t.code[n].dirs(i)) {
        if (rows[i].size() < t.code[n].dirs(i)) {
          throw ValidateError("next not total at node " + std::to_string(n) + ", (i=" +
                              std::to_string(i) + ",d=" + std::to_string(rows[i].size()) + ")");
        }
        throw ValidateError("next has extra entries at node " + std::to_string(n) + ", (i=" +
                            std::to_string(i) + ")");
      }
      for (std::size_t d = 0; d < rows[i].size(); ++d) {
        if (rows[i][d] >= t.code.size()) {
          throw ValidateError("next target out of range at node " + std::to_string(n) + ", (i=" +
                              std::to_string(i) + ",d=" + std::to_string(d) + ")");
        }
      }
    }
  }
}

Tree Tree::finite(FiniteTreeData data) {
  validate(data);
  return finite(std::make_shared<const FiniteTreeData>(std::move(data)));
}

Tree Tree::finite(std::shared_ptr<const FiniteTreeData> data) {
  Tree t;
  t.node_ = data->root;
  t.finite_ = std::move(data);
  return t;
}

Tree Tree::finite_at(std::shared_ptr<const FiniteTreeData> data, std::size_t node) {
  if (node >= data->code.size()) throw ValidateError("node index out of range");
  Tree t;
  t.finite_ = std::move(data);
  t.node_ = node;
  return t;
}

Tree Tree::lazy(LazyGen gen) {
  Tree t;
  t.lazy_ = std::make_shared<LazyNodeImpl>(std::move(gen));
  return t;
}

const PolyCode& Tree::root() const {
  if (finite_) return finite_->code[node_];
  if (lazy_) return lazy_->root();
  throw Error("empty tree handle");
}

Tree Tree::child(std::size_t i, std::size_t d) const {
  if (finite_) {
    const PolyCode& c = finite_->code[node_];
    if (i >= c.size() || d >= c.dirs(i)) {
      throw ValidateError("child (i=" + std::to_string(i) + ",d=" + std::to_string(d) +
                          ") out of range for " + c.describe());
    }
    return finite_at(finite_, finite_->next[node_][i][d]);
  }
  if (lazy_) return lazy_->child(i, d);
  throw Error("empty tree handle");
}

Tree constant_tree(PolyCode p) {
  validate(p);
  FiniteTreeData data;
  data.root = 0;
  std::vector<std::vector<std::size_t>> rows(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) rows[i].assign(p.dirs(i), 0);
  data.code.push_back(std::move(p));
  data.next.push_back(std::move(rows));
  return Tree::finite(std::move(data));
}

Tree sum_tree(const Tree& a, const Tree& b) {
  if (a.is_finite() && b.is_finite()) {
    const FiniteTreeData& da = *a.finite_data();
    const FiniteTreeData& db = *b.finite_data();
    const std::size_t na = da.code.size();
    FiniteTreeData out;
    out.root = 0;
    out.code.reserve(1 + na + db.code.size());
    out.next.reserve(out.code.capacity());

    out.code.push_back(sum_poly(a.root(), b.root(), kUnbounded));
    std::vector<std::vector<std::size_t>> root_rows;
    for (std::size_t i = 0; i < a.root().size(); ++i) {
      std::vector<std::size_t> row = da.next[a.node()][i];
      for (auto& n : row) n += 1;
      root_rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < b.root().size(); ++j) {
      std::vector<std::size_t> row = db.next[b.node()][j];
      for (auto& n : row) n += 1 + na;
      root_rows.push_back(std::move(row));
    }
    out.next.push_back(std::move(root_rows));

    for (std::size_t n = 0; n < na; ++n) {
      out.code.push_back(da.code[n]);
      auto rows = da.next[n];
      for (auto& row : rows) {
        for (auto& m : row) m += 1;
      }
      out.next.push_back(std::move(rows));
    }
    for (std::size_t n = 0; n < db.code.size(); ++n) {
      out.code.push_back(db.code[n]);
      auto rows = db.next[n];
      for (auto& row : rows) {
        for (auto& m : row) m += 1 + na;
      }
      out.next.push_back(std::move(rows));
    }
    return Tree::finite(std::move(out));
  }

  return Tree::lazy([a, b]() {
    PolyCode code = sum_poly(a.root(), b.root(), kUnbounded);
    std::size_t na = a.root().size();
    std::function<Tree(std::size_t, std::size_t)> children = [a, b, na](std::size_t i,
                                                                        std::size_t d) {
      return i < na ? a.child(i, d) : b.child(i - na, d);
    };
    return std::pair{std::move(code), std::move(children)};
  });
}

TensorProvenance tensor_tree_with_provenance(const Tree& a, const Tree& b, const Budget& budget) {
  if (!a.is_finite() || !b.is_finite()) {
    throw Error("tensor provenance requires finite trees");
  }
  const FiniteTreeData& da = *a.finite_data();
  const FiniteTreeData& db = *b.finite_data();

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::deque<std::size_t> queue;
  auto intern = [&](std::size_t n1, std::size_t n2) {
    auto [it, fresh] = index.try_emplace({n1, n2}, order.size());
    if (fresh) {
      budget.check("tensor tree nodes", Count(order.size() + 1));
      order.emplace_back(n1, n2);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(a.node(), b.node());

  FiniteTreeData out;
  out.root = 0;
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    auto [n1, n2] = order[id];
    const PolyCode& c1 = da.code[n1];
    const PolyCode& c2 = db.code[n2];
    PolyCode code = tensor_poly(c1, c2, budget);
    std::vector<std::vector<std::size_t>> rows(code.size());
    for (std::size_t i = 0; i < c1.size(); ++i) {
      for (std::size_t j = 0; j < c2.size(); ++j) {
        std::size_t s = tensor_pos_flat(c1, c2, i, j);
        rows[s].resize(code.dirs(s));
        for (std::size_t d = 0; d < c1.dirs(i); ++d) {
          for (std::size_t e = 0; e < c2.dirs(j); ++e) {
            rows[s][tensor_dir_flat(c1, c2, i, j, d, e)] =
                intern(da.next[n1][i][d], db.next[n2][j][e]);
          }
        }
      }
    }
    out.code.push_back(std::move(code));
    out.next.push_back(std::move(rows));
  }
  return TensorProvenance{Tree::finite(std::move(out)), std::move(order)};
}

Tree tensor_tree(const Tree& a, const Tree& b, const Budget& budget) {
  if (a.is_finite() && b.is_finite()) {
    return tensor_tree_with_provenance(a, b, budget).tree;
  }
  return Tree::lazy([a, b, budget]() {
    PolyCode ca = a.root();
    PolyCode cb = b.root();
    PolyCode code = tensor_poly(ca, cb, budget);
    std::function<Tree(std::size_t, std::size_t)> children =
        [a, b, budget, ca, cb](std::size_t s, std::size_t f) {
          auto [i, j] = tensor_pos_unflat(ca, cb, s);
          auto [d, e] = tensor_dir_unflat(ca, cb, i, j, f);
          return tensor_tree(a.child(i, d), b.child(j, e), budget);
        };
    return std::pair{std::move(code), std::move(children)};
  });
}

Tree tensor_tree(std::span<const Tree> ts, const Budget& budget) {
  if (ts.empty()) return constant_tree(PolyCode::y());
  Tree acc = ts[0];
  for (std::size_t k = 1; k < ts.size(); ++k) acc = tensor_tree(acc, ts[k], budget);
  return acc;
}

Tree act_prod(const PolyCode& p, const Tree& t, const Budget& budget) {
  validate(p);
  if (t.is_finite()) {
    const FiniteTreeData& dt = *t.finite_data();
    FiniteTreeData out;
    out.root = t.node();
    out.code.reserve(dt.code.size());
    out.next.reserve(dt.code.size());
    for (std::size_t n = 0; n < dt.code.size(); ++n) {
      const PolyCode& c = dt.code[n];
      PolyCode code = prod_poly(p, c, budget);
      std::vector<std::vector<std::size_t>> rows(code.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          std::size_t s = i * c.size() + j;
          rows[s].resize(code.dirs(s));
          for (std::size_t d = 0; d < p.dirs(i); ++d) rows[s][d] = n;  // static factor
          for (std::size_t e = 0; e < c.dirs(j); ++e) {
            rows[s][p.dirs(i) + e] = dt.next[n][j][e];
          }
        }
      }
      out.code.push_back(std::move(code));
      out.next.push_back(std::move(rows));
    }
    return Tree::finite(std::move(out));
  }
  return Tree::lazy([p, t, budget]() {
    PolyCode c = t.root();
    PolyCode code = prod_poly(p, c, budget);
    std::function<Tree(std::size_t, std::size_t)> children =
        [p, t, budget, c](std::size_t s, std::size_t f) {
          std::size_t i = s / c.size();
          std::size_t j = s % c.size();
          if (f < p.dirs(i)) return act_prod(p, t, budget);
          return act_prod(p, t.child(j, f - p.dirs(i)), budget);
        };
    return std::pair{std::move(code), std::move(children)};
  });
}

namespace {

TruncTree truncate_impl(const Tree& t, std::size_t depth, std::size_t& visited,
                        const Budget& budget) {
  if (++visited > budget.limit) {
    throw BudgetError("truncate", std::to_string(visited), budget.limit);
  }
  TruncTree out;
  out.depth = depth;
  if (depth == 0) return out;
  const PolyCode& c = t.root();
  out.code = c;
  out.children.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.children[i].reserve(c.dirs(i));
    for (std::size_t d = 0; d < c.dirs(i); ++d) {
      out.children[i].push_back(truncate_impl(t.child(i, d), depth - 1, visited, budget));
    }
  }
  return out;
}

}  // namespace

TruncTree truncate(const Tree& t, std::size_t depth, const Budget& budget) {
  std::size_t visited = 0;
  return truncate_impl(t, depth, visited, budget);
}

TruncTree restrict_depth(const TruncTree& t, std::size_t m) {
  if (m > t.depth) throw ValidateError("cannot deepen a truncation");
  TruncTree out;
  out.depth = m;
  if (m == 0) return out;
  out.code = t.code;
  out.children.resize(t.children.size());
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    out.children[i].reserve(t.children[i].size());
    for (const auto& c : t.children[i]) out.children[i].push_back(restrict_depth(c, m - 1));
  }
  return out;
}

bool operator==(const TruncTree& a, const TruncTree& b) {
  if (a.depth != b.depth) return false;
  if (a.depth == 0) return true;
  if (!a.code || !b.code || !a.code->same_shape(*b.code)) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i].size() != b.children[i].size()) return false;
    for (std::size_t d = 0; d < a.children[i].size(); ++d) {
      if (!(a.children[i][d] == b.children[i][d])) return false;
    }
  }
  return true;
}

bool bisimilar(const Tree& a, const Tree& b, std::size_t depth, const Budget& budget) {
  return truncate(a, depth, budget) == truncate(b, depth, budget);
}

namespace {

// Reachable nodes of a finite presentation, breadth-first from start.
std::vector<std::size_t> reachable_nodes(const FiniteTreeData& d, std::size_t start) {
  std::vector<char> seen(d.code.size(), 0);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    std::size_t n = queue.front();
    queue.pop_front();
    order.push_back(n);
    for (const auto& row : d.next[n]) {
      for (std::size_t m : row) {
        if (!seen[m]) {
          seen[m] = 1;
          queue.push_back(m);
        }
      }
    }
  }
  return order;
}

}  // namespace

bool bisimilar(const Tree& a, const Tree& b) {
  if (!a.is_finite() || !b.is_finite()) {
    throw Error("exact bisimilarity requires finite trees; use a depth bound");
  }
  const FiniteTreeData* data[2] = {a.finite_data().get(), b.finite_data().get()};
  std::size_t start[2] = {a.node(), b.node()};

  // Combined state space of both presentations.
  struct State {
    int tag;
    std::size_t node;
  };
  std::vector<State> states;
  std::map<std::pair<int, std::size_t>, std::size_t> state_index;
  for (int tag = 0; tag < 2; ++tag) {
    for (std::size_t n : reachable_nodes(*data[tag], start[tag])) {
      state_index[{tag, n}] = states.size();
      states.push_back({tag, n});
    }
  }

  auto code_of_state = [&](std::size_t s) -> const PolyCode& {
    return data[states[s].tag]->code[states[s].node];
  };

  // Initial partition: by polynomial shape.
  std::map<std::vector<std::size_t>, std::size_t> shape_block;
  std::vector<std::size_t> block(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<std::size_t> shape;
    const PolyCode& c = code_of_state(s);
    shape.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) shape.push_back(c.dirs(i));
    auto [it, fresh] = shape_block.try_emplace(shape, shape_block.size());
    (void)fresh;
    block[s] = it->second;
  }

  // Refine until stable.
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_block;
    std::vector<std::size_t> next_block(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
      std::vector<std::size_t> sig{block[s]};
      const auto& rows = data[states[s].tag]->next[states[s].node];
      for (const auto& row : rows) {
        for (std::size_t m : row) sig.push_back(block[state_index[{states[s].tag, m}]]);
      }
      auto [it, fresh] = sig_block.try_emplace(sig, sig_block.size());
      (void)fresh;
      next_block[s] = it->second;
    }
    if (next_block == block) break;
    block = std::move(next_block);
  }

  return block[state_index[{0, start[0]}]] == block[state_index[{1, start[1]}]];
}

std::shared_ptr<const FiniteTreeData> canonicalize(const Tree& t) {
  if (!t.is_finite()) throw Error("canonicalize requires a finite tree");
  const FiniteTreeData& d = *t.finite_data();
  std::vector<std::size_t> order = reachable_nodes(d, t.node());
  std::vector<std::size_t> rename(d.code.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) rename[order[k]] = k;

  FiniteTreeData out;
  out.root = 0;
  out.code.reserve(order.size());
  out.next.reserve(order.size());
  for (std::size_t n : order) {
    out.code.push_back(d.code[n]);
    auto rows = d.next[n];
    for (auto& row : rows) {
      for (auto& m : row) m = rename[m];
    }
    out.next.push_back(std::move(rows));
  }
  return std::make_shared<const FiniteTreeData>(std::move(out));
}

bool structurally_equal(const Tree& a, const Tree& b) {
  auto ca = canonicalize(a);
  auto cb = canonicalize(b);
  if (ca->code.size() != cb->code.size()) return false;
  for (std::size_t n = 0; n < ca->code.size(); ++n) {
    if (!ca->code[n].same_shape(cb->code[n])) return false;
    if (ca->next[n] != cb->next[n]) return false;
  }
  return true;
}

namespace {

std::vector<char> from_y_fixpoint(const FiniteTreeData& d) {
  std::vector<char> in(d.code.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = 0; n < d.code.size(); ++n) {
      if (!in[n]) continue;
      bool ok = false;
      for (std::size_t i = 0; i < d.code[n].size() && !ok; ++i) {
        bool all = true;
        for (std::size_t dd = 0; dd < d.code[n].dirs(i); ++dd) {
          if (!in[d.next[n][i][dd]]) {
            all = false;
            break;
          }
        }
        ok = all;  // a position with no directions wins outright
      }
      if (!ok) {
        in[n] = 0;
        changed = true;
      }
    }
  }
  return in;
}

std::vector<char> to_y_fixpoint(const FiniteTreeData& d) {
  std::vector<char> in(d.code.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = 0; n < d.code.size(); ++n) {
      if (!in[n]) continue;
      bool ok = true;  // no positions: vacuously answerable
      for (std::size_t i = 0; i < d.code[n].size() && ok; ++i) {
        bool any = false;
        for (std::size_t dd = 0; dd < d.code[n].dirs(i); ++dd) {
          if (in[d.next[n][i][dd]]) {
            any = true;
            break;
          }
        }
        ok = any;  // a position with no directions cannot be answered
      }
      if (!ok) {
        in[n] = 0;
        changed = true;
      }
    }
  }
  return in;
}

const FiniteTreeData& require_finite(const Tree& t, const char* what) {
  if (!t.is_finite()) throw Error(std::string(what) + " requires a finite tree");
  return *t.finite_data();
}

}  // namespace

bool exists_map_from_y(const Tree& t) {
  const FiniteTreeData& d = require_finite(t, "strategy existence");
  return from_y_fixpoint(d)[t.node()] != 0;
}

bool exists_map_to_y(const Tree& t) {
  const FiniteTreeData& d = require_finite(t, "strategy existence");
  return to_y_fixpoint(d)[t.node()] != 0;
}

std::optional<std::vector<std::size_t>> from_y_strategy(const Tree& t) {
  const FiniteTreeData& d = require_finite(t, "strategy synthesis");
  std::vector<char> in = from_y_fixpoint(d);
  if (!in[t.node()]) return std::nullopt;
  std::vector<std::size_t> choice(d.code.size(), kNoChoice);
  for (std::size_t n = 0; n < d.code.size(); ++n) {
    if (!in[n]) continue;
    for (std::size_t i = 0; i < d.code[n].size(); ++i) {
      bool all = true;
      for (std::size_t dd = 0; dd < d.code[n].dirs(i); ++dd) {
        if (!in[d.next[n][i][dd]]) {
          all = false;
          break;
        }
      }
      if (all) {
        choice[n] = i;
        break;
      }
    }
  }
  return choice;
}

std::optional<std::vector<std::vector<std::size_t>>> to_y_strategy(const Tree& t) {
  const FiniteTreeData& d = require_finite(t, "strategy synthesis");
  std::vector<char> in = to_y_fixpoint(d);
  if (!in[t.node()]) return std::nullopt;
  std::vector<std::vector<std::size_t>> choice(d.code.size());
  for (std::size_t n = 0; n < d.code.size(); ++n) {
    choice[n].assign(d.code[n].size(), kNoChoice);
    if (!in[n]) continue;
    for (std::size_t i = 0; i < d.code[n].size(); ++i) {
      for (std::size_t dd = 0; dd < d.code[n].dirs(i); ++dd) {
        if (in[d.next[n][i][dd]]) {
          choice[n][i] = dd;
          break;
        }
      }
    }
  }
  return choice;
}

namespace {

Count behavior_count_impl(const Tree& t, std::size_t depth,
                          std::map<std::tuple<const void*, std::size_t, std::size_t>, Count>& memo,
                          std::size_t& visits, const Budget& budget) {
  if (depth == 0) return 1;
  std::tuple<const void*, std::size_t, std::size_t> key{nullptr, 0, depth};
  bool memoizable = t.is_finite();
  if (memoizable) {
    key = {t.finite_data().get(), t.node(), depth};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  if (++visits > budget.limit) {
    throw BudgetError("behavior count traversal", std::to_string(visits), budget.limit);
  }
  const PolyCode& c = t.root();
  Count total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Count prod = 1;
    for (std::size_t d = 0; d < c.dirs(i); ++d) {
      prod *= behavior_count_impl(t.child(i, d), depth - 1, memo, visits, budget);
      if (prod == 0) break;
    }
    total += prod;
  }
  if (memoizable) memo.emplace(key, total);
  return total;
}

std::vector<BehaviorTrunc> enumerate_behaviors_impl(const Tree& t, std::size_t depth) {
  if (depth == 0) return {BehaviorTrunc{}};
  const PolyCode& c = t.root();
  std::vector<BehaviorTrunc> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<std::vector<BehaviorTrunc>> per_dir(c.dirs(i));
    bool empty = false;
    for (std::size_t d = 0; d < c.dirs(i); ++d) {
      per_dir[d] = enumerate_behaviors_impl(t.child(i, d), depth - 1);
      if (per_dir[d].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<std::size_t> radices(c.dirs(i));
    for (std::size_t d = 0; d < c.dirs(i); ++d) radices[d] = per_dir[d].size();
    std::vector<std::size_t> pick(c.dirs(i), 0);
    while (true) {
      BehaviorTrunc node;
      node.depth = depth;
      node.position = i;
      node.children.reserve(c.dirs(i));
      for (std::size_t d = 0; d < c.dirs(i); ++d) node.children.push_back(per_dir[d][pick[d]]);
      out.push_back(std::move(node));
      if (pick.empty() || !mixed_radix_next(radices, pick)) break;
    }
  }
  return out;
}

}  // namespace

Count behavior_count(const Tree& t, std::size_t depth, const Budget& budget) {
  std::map<std::tuple<const void*, std::size_t, std::size_t>, Count> memo;
  std::size_t visits = 0;
  return behavior_count_impl(t, depth, memo, visits, budget);
}

std::vector<BehaviorTrunc> enumerate_behaviors(const Tree& t, std::size_t depth,
                                               const Budget& budget) {
  Count total = behavior_count(t, depth, budget);
  budget.check("enumerate behaviors", total);
  return enumerate_behaviors_impl(t, depth);
}

}  // namespace polytree

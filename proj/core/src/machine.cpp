#include "polytree/machine.hpp"

#include "polytree/errors.hpp"

#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <tuple>
#include <utility>

namespace polytree {

namespace {
const Budget kUnbounded{std::numeric_limits<std::uint64_t>::max()};

std::size_t state_index(const Machine::State& s) { return std::any_cast<std::size_t>(s); }
}  // namespace

Machine Machine::finite(Tree p, Tree q, std::size_t states, std::size_t start, FiniteActFn act,
                        FiniteUpdFn upd) {
  if (start >= states) throw ValidateError("start state out of range");
  Machine m;
  m.p_ = std::move(p);
  m.q_ = std::move(q);
  m.states_ = states;
  m.start_ = State(start);
  m.act_ = [act = std::move(act)](const State& s, const Tree& pn, const Tree& qn) {
    return act(state_index(s), pn, qn);
  };
  m.upd_ = [upd = std::move(upd)](const State& s, const Tree& pn, const Tree& qn, std::size_t i,
                                  std::size_t e) {
    return State(upd(state_index(s), pn, qn, i, e));
  };
  return m;
}

Machine Machine::opaque(Tree p, Tree q, State start, ActFn act, UpdFn upd) {
  Machine m;
  m.p_ = std::move(p);
  m.q_ = std::move(q);
  m.start_ = std::move(start);
  m.act_ = std::move(act);
  m.upd_ = std::move(upd);
  return m;
}

std::size_t Machine::state_count() const {
  if (!states_) throw Error("machine has an opaque state space");
  return *states_;
}

std::size_t Machine::start_index() const {
  if (!states_) throw Error("machine has an opaque state space");
  return state_index(start_);
}

PolyMap Machine::act(std::size_t s, const Tree& pn, const Tree& qn) const {
  return act_(State(s), pn, qn);
}

std::size_t Machine::upd_index(std::size_t s, const Tree& pn, const Tree& qn, std::size_t i,
                               std::size_t e) const {
  return state_index(upd_(State(s), pn, qn, i, e));
}

namespace {

void require_finite_setting(const Machine& m, const char* what) {
  if (!m.finite_state()) throw Error(std::string(what) + " requires a finite state space");
  if (!m.source().is_finite() || !m.target().is_finite()) {
    throw Error(std::string(what) + " requires finite trees");
  }
}

}  // namespace

std::vector<ReachableTriple> reachable_triples(const Machine& m) {
  require_finite_setting(m, "reachability");
  std::set<std::array<std::size_t, 3>> seen;
  std::deque<ReachableTriple> queue;
  std::vector<ReachableTriple> out;
  auto push = [&](std::size_t s, const Tree& pn, const Tree& qn) {
    std::array<std::size_t, 3> key{s, pn.node(), qn.node()};
    if (seen.insert(key).second) queue.push_back(ReachableTriple{s, pn, qn});
  };
  for (std::size_t s = 0; s < m.state_count(); ++s) push(s, m.source(), m.target());
  while (!queue.empty()) {
    ReachableTriple t = queue.front();
    queue.pop_front();
    PolyMap a = m.act(t.state, t.pn, t.qn);
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      std::size_t j = a.on_pos(i);
      for (std::size_t e = 0; e < a.target().dirs(j); ++e) {
        std::size_t d = a.on_dir(i, e);
        push(m.upd_index(t.state, t.pn, t.qn, i, e), t.pn.child(i, d), t.qn.child(j, e));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

MachineCheck validate_machine(const Machine& m) {
  try {
    require_finite_setting(m, "validation");
  } catch (const Error& err) {
    return MachineCheck{false, err.what(), std::nullopt};
  }
  std::set<std::array<std::size_t, 3>> seen;
  std::deque<ReachableTriple> queue;
  auto push = [&](std::size_t s, const Tree& pn, const Tree& qn) {
    std::array<std::size_t, 3> key{s, pn.node(), qn.node()};
    if (seen.insert(key).second) queue.push_back(ReachableTriple{s, pn, qn});
  };
  for (std::size_t s = 0; s < m.state_count(); ++s) push(s, m.source(), m.target());
  while (!queue.empty()) {
    ReachableTriple t = queue.front();
    queue.pop_front();
    std::array<std::size_t, 3> at{t.state, t.pn.node(), t.qn.node()};
    std::optional<PolyMap> act;
    try {
      act = m.act(t.state, t.pn, t.qn);
    } catch (const Error& err) {
      return MachineCheck{false, std::string("act failed: ") + err.what(), at};
    }
    const PolyMap& a = *act;
    if (!a.source().same_shape(t.pn.root())) {
      return MachineCheck{false,
                          "act source code mismatch: " + a.source().describe() + " vs " +
                              t.pn.root().describe(),
                          at};
    }
    if (!a.target().same_shape(t.qn.root())) {
      return MachineCheck{false,
                          "act target code mismatch: " + a.target().describe() + " vs " +
                              t.qn.root().describe(),
                          at};
    }
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      std::size_t j = a.on_pos(i);
      for (std::size_t e = 0; e < a.target().dirs(j); ++e) {
        std::size_t d = a.on_dir(i, e);
        std::size_t s2;
        try {
          s2 = m.upd_index(t.state, t.pn, t.qn, i, e);
        } catch (const Error& err) {
          return MachineCheck{false, std::string("upd failed: ") + err.what(), at};
        }
        if (s2 >= m.state_count()) {
          return MachineCheck{false, "upd successor out of range", at};
        }
        push(s2, t.pn.child(i, d), t.qn.child(j, e));
      }
    }
  }
  return MachineCheck{};
}

namespace {

TruncMorphism unfold_impl(const Machine& m, const Machine::State& s, const Tree& pn,
                          const Tree& qn, std::size_t depth) {
  TruncMorphism out;
  out.depth = depth;
  if (depth == 0) return out;
  PolyMap a = m.act(s, pn, qn);
  if (!a.source().same_shape(pn.root()) || !a.target().same_shape(qn.root())) {
    throw ValidateError("machine action does not match the current codes (" +
                        a.source().describe() + " -> " + a.target().describe() + " at " +
                        pn.root().describe() + " -> " + qn.root().describe() + ")");
  }
  out.root_map = a;
  out.children.resize(a.source().size());
  for (std::size_t i = 0; i < a.source().size(); ++i) {
    std::size_t j = a.on_pos(i);
    out.children[i].reserve(a.target().dirs(j));
    for (std::size_t e = 0; e < a.target().dirs(j); ++e) {
      std::size_t d = a.on_dir(i, e);
      Machine::State s2 = m.upd(s, pn, qn, i, e);
      out.children[i].push_back(unfold_impl(m, s2, pn.child(i, d), qn.child(j, e), depth - 1));
    }
  }
  return out;
}

}  // namespace

TruncMorphism unfold_machine(const Machine& m, std::size_t depth) {
  return unfold_impl(m, m.start(), m.source(), m.target(), depth);
}

Machine identity_machine(const Tree& t) {
  return Machine::finite(
      t, t, 1, 0, [](std::size_t, const Tree& pn, const Tree&) { return identity_poly_map(pn.root()); },
      [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
        return 0;
      });
}

Machine compose_machines(const Machine& m, const Machine& n) {
  if (!same_handle(m.target(), n.source())) {
    throw ValidateError("compose: machines must share the middle tree presentation");
  }
  const Tree middle0 = m.target();

  if (m.finite_state() && n.finite_state() && middle0.is_finite()) {
    auto mdata = middle0.finite_data();
    const std::size_t T = n.state_count();
    const std::size_t Q = mdata->code.size();
    const std::size_t S = m.state_count();
    auto decode = [mdata, T, Q](std::size_t id) {
      std::size_t qn = id % Q;
      std::size_t t = (id / Q) % T;
      std::size_t s = id / (Q * T);
      return std::tuple{s, t, Tree::finite_at(mdata, qn)};
    };
    auto act = [m, n, decode](std::size_t id, const Tree& pn, const Tree& rn) {
      auto [s, t, qn] = decode(id);
      return compose_poly_maps(m.act(s, pn, qn), n.act(t, qn, rn));
    };
    auto upd = [m, n, decode, T, Q](std::size_t id, const Tree& pn, const Tree& rn, std::size_t i,
                                    std::size_t f) -> std::size_t {
      auto [s, t, qn] = decode(id);
      PolyMap a = m.act(s, pn, qn);
      PolyMap b = n.act(t, qn, rn);
      std::size_t j = a.on_pos(i);
      std::size_t e = b.on_dir(j, f);
      std::size_t s2 = m.upd_index(s, pn, qn, i, e);
      std::size_t t2 = n.upd_index(t, qn, rn, j, f);
      std::size_t qn2 = qn.child(j, e).node();
      return (s2 * T + t2) * Q + qn2;
    };
    std::size_t start = (m.start_index() * T + n.start_index()) * Q + middle0.node();
    return Machine::finite(m.source(), n.target(), S * T * Q, start, act, upd);
  }

  auto act = [m, n](const Machine::State& s, const Tree& pn, const Tree& rn) {
    const auto& cs = *std::any_cast<CompositeState>(&s);
    return compose_poly_maps(m.act(cs.first, pn, cs.middle), n.act(cs.second, cs.middle, rn));
  };
  auto upd = [m, n](const Machine::State& s, const Tree& pn, const Tree& rn, std::size_t i,
                    std::size_t f) -> Machine::State {
    const auto& cs = *std::any_cast<CompositeState>(&s);
    PolyMap a = m.act(cs.first, pn, cs.middle);
    PolyMap b = n.act(cs.second, cs.middle, rn);
    std::size_t j = a.on_pos(i);
    std::size_t e = b.on_dir(j, f);
    CompositeState out;
    out.first = m.upd(cs.first, pn, cs.middle, i, e);
    out.second = n.upd(cs.second, cs.middle, rn, j, f);
    out.middle = cs.middle.child(j, e);
    return out;
  };
  CompositeState start{m.start(), n.start(), middle0};
  return Machine::opaque(m.source(), n.target(), start, act, upd);
}

bool check_machine_map(const std::vector<std::size_t>& f, const Machine& m, const Machine& n) {
  require_finite_setting(m, "machine-map check");
  require_finite_setting(n, "machine-map check");
  if (!same_handle(m.source(), n.source()) || !same_handle(m.target(), n.target())) {
    throw ValidateError("machine-map check requires machines over the same trees");
  }
  if (f.size() != m.state_count()) throw ValidateError("state function has the wrong domain");
  for (std::size_t v : f) {
    if (v >= n.state_count()) throw ValidateError("state function value out of range");
  }

  std::set<std::array<std::size_t, 3>> seen;
  std::deque<ReachableTriple> queue;
  auto push = [&](std::size_t s, const Tree& pn, const Tree& qn) {
    std::array<std::size_t, 3> key{s, pn.node(), qn.node()};
    if (seen.insert(key).second) queue.push_back(ReachableTriple{s, pn, qn});
  };
  for (std::size_t s = 0; s < m.state_count(); ++s) push(s, m.source(), m.target());
  while (!queue.empty()) {
    ReachableTriple t = queue.front();
    queue.pop_front();
    PolyMap a = m.act(t.state, t.pn, t.qn);
    PolyMap a2 = n.act(f[t.state], t.pn, t.qn);
    if (!(a == a2)) return false;
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      std::size_t j = a.on_pos(i);
      for (std::size_t e = 0; e < a.target().dirs(j); ++e) {
        std::size_t d = a.on_dir(i, e);
        std::size_t s2 = m.upd_index(t.state, t.pn, t.qn, i, e);
        std::size_t s2n = n.upd_index(f[t.state], t.pn, t.qn, i, e);
        if (f[s2] != s2n) return false;
        push(s2, t.pn.child(i, d), t.qn.child(j, e));
      }
    }
  }
  return true;
}

Machine embed_coalgebra(const PolyCode& p, const PolyCode& q, const SetCoalgebra& beta, Tree tp,
                        Tree tq, const Budget& budget) {
  validate(beta);
  PolyCode hom = ihom_poly(p, q, budget);
  if (!beta.carrier.same_shape(hom)) {
    throw ValidateError("coalgebra carrier " + beta.carrier.describe() +
                        " is not the internal hom " + hom.describe());
  }
  auto maps = std::make_shared<std::vector<PolyMap>>(enumerate_maps(p, q, budget));
  auto positions = std::make_shared<std::vector<std::size_t>>(beta.position);
  auto successors = std::make_shared<std::vector<std::vector<std::size_t>>>(beta.successor);
  auto act = [maps, positions](std::size_t s, const Tree&, const Tree&) {
    return (*maps)[(*positions)[s]];
  };
  auto upd = [maps, positions, successors](std::size_t s, const Tree&, const Tree&, std::size_t i,
                                           std::size_t e) -> std::size_t {
    const PolyMap& f = (*maps)[(*positions)[s]];
    return (*successors)[s][ihom_dir_flat(f, i, e)];
  };
  return Machine::finite(std::move(tp), std::move(tq), beta.states, 0, act, upd);
}

Machine embed_coalgebra(const PolyCode& p, const PolyCode& q, const SetCoalgebra& beta,
                        const Budget& budget) {
  return embed_coalgebra(p, q, beta, constant_tree(p), constant_tree(q), budget);
}

namespace {

void require_constant_codes(const Machine& m) {
  auto check = [](const Tree& t) {
    const FiniteTreeData& d = *t.finite_data();
    for (std::size_t n = 0; n < d.code.size(); ++n) {
      if (!d.code[n].same_shape(d.code[t.node()])) {
        throw Error("machine is not over constant trees");
      }
    }
  };
  check(m.source());
  check(m.target());
}

}  // namespace

bool is_time_invariant(const Machine& m) {
  require_finite_setting(m, "time invariance");
  require_constant_codes(m);

  // Per state: the action and update row must agree across every reachable
  // node pair.
  std::map<std::size_t, std::pair<PolyMap, std::vector<std::size_t>>> fixed;
  for (const ReachableTriple& t : reachable_triples(m)) {
    PolyMap a = m.act(t.state, t.pn, t.qn);
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      for (std::size_t e = 0; e < a.target().dirs(a.on_pos(i)); ++e) {
        row.push_back(m.upd_index(t.state, t.pn, t.qn, i, e));
      }
    }
    auto it = fixed.find(t.state);
    if (it == fixed.end()) {
      fixed.emplace(t.state, std::make_pair(std::move(a), std::move(row)));
    } else if (!(it->second.first == a) || it->second.second != row) {
      return false;
    }
  }
  return true;
}

SetCoalgebra retract_to_coalgebra(const Machine& m, const Budget& budget) {
  require_finite_setting(m, "retraction");
  require_constant_codes(m);
  const PolyCode& p = m.source().root();
  const PolyCode& q = m.target().root();
  SetCoalgebra beta;
  beta.carrier = ihom_poly(p, q, budget);
  beta.states = m.state_count();
  beta.position.resize(beta.states);
  beta.successor.resize(beta.states);
  for (std::size_t s = 0; s < beta.states; ++s) {
    PolyMap a = m.act(s, m.source(), m.target());
    beta.position[s] = to_size_t(poly_map_rank(a));
    beta.successor[s].resize(ihom_dir_count(a));
    for (std::size_t i = 0; i < a.source().size(); ++i) {
      for (std::size_t e = 0; e < a.target().dirs(a.on_pos(i)); ++e) {
        beta.successor[s][ihom_dir_flat(a, i, e)] =
            m.upd_index(s, m.source(), m.target(), i, e);
      }
    }
  }
  validate(beta);
  return beta;
}

TruncMorphism s1_to_trunc(const Machine& m, std::size_t depth) {
  if (!m.finite_state() || m.state_count() != 1) {
    throw Error("conversion to a truncated morphism requires a single-state machine");
  }
  return unfold_machine(m, depth);
}

Machine trunc_to_s1(const TruncMorphism& f, Tree p, Tree q) {
  using Stored = std::shared_ptr<const TruncMorphism>;
  Stored root = std::make_shared<const TruncMorphism>(f);
  auto act = [](const Machine::State& s, const Tree&, const Tree&) {
    const Stored& cur = *std::any_cast<Stored>(&s);
    if (cur->depth == 0) throw Error("truncated morphism exhausted; unfold at a smaller depth");
    return *cur->root_map;
  };
  auto upd = [](const Machine::State& s, const Tree&, const Tree&, std::size_t i,
                std::size_t e) -> Machine::State {
    const Stored& cur = *std::any_cast<Stored>(&s);
    return Stored(cur, &cur->children[i][e]);
  };
  return Machine::opaque(std::move(p), std::move(q), root, act, upd);
}

std::optional<Machine> from_y_witness(const Tree& t) {
  auto choice = from_y_strategy(t);
  if (!choice) return std::nullopt;
  auto picks = std::make_shared<std::vector<std::size_t>>(std::move(*choice));
  auto act = [picks](std::size_t, const Tree& pn, const Tree& qn) -> PolyMap {
    std::size_t i = (*picks)[qn.node()];
    if (i == kNoChoice) throw Error("strategy has no choice at the current node");
    return PolyMap(pn.root(), qn.root(), {i},
                   {std::vector<std::size_t>(qn.root().dirs(i), 0)});
  };
  auto upd = [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
    return 0;
  };
  return Machine::finite(constant_tree(PolyCode::y()), t, 1, 0, act, upd);
}

std::optional<Machine> to_y_witness(const Tree& t) {
  auto choice = to_y_strategy(t);
  if (!choice) return std::nullopt;
  auto picks = std::make_shared<std::vector<std::vector<std::size_t>>>(std::move(*choice));
  auto act = [picks](std::size_t, const Tree& pn, const Tree& qn) -> PolyMap {
    const std::vector<std::size_t>& row = (*picks)[pn.node()];
    std::vector<std::size_t> on_pos(pn.root().size(), 0);
    std::vector<std::vector<std::size_t>> on_dir(pn.root().size());
    for (std::size_t i = 0; i < pn.root().size(); ++i) {
      if (row[i] == kNoChoice) throw Error("strategy has no answer at the current node");
      on_dir[i] = {row[i]};
    }
    return PolyMap(pn.root(), qn.root(), std::move(on_pos), std::move(on_dir));
  };
  auto upd = [](std::size_t, const Tree&, const Tree&, std::size_t, std::size_t) -> std::size_t {
    return 0;
  };
  return Machine::finite(t, constant_tree(PolyCode::y()), 1, 0, act, upd);
}

}  // namespace polytree

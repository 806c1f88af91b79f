#pragma once

#include "polytree/budget.hpp"
#include "polytree/coalgebra.hpp"
#include "polytree/hom.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <any>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polytree {

/// A state-machine morphism between trees: per state and per pair of
/// current nodes, an action (a polynomial map between the nodes' codes)
/// and a successor state per internal-hom direction of that action.
///
/// The current tree nodes are explicit arguments so that path-dependent
/// behavior needs no per-node tables; node-independent machines simply
/// ignore them. State spaces are either finite (indices 0..S-1) or opaque
/// (any value), the latter supporting only unfolding and simulation.
class Machine {
public:
  using State = std::any;
  using ActFn = std::function<PolyMap(const State&, const Tree&, const Tree&)>;
  using UpdFn =
      std::function<State(const State&, const Tree&, const Tree&, std::size_t, std::size_t)>;
  using FiniteActFn = std::function<PolyMap(std::size_t, const Tree&, const Tree&)>;
  using FiniteUpdFn =
      std::function<std::size_t(std::size_t, const Tree&, const Tree&, std::size_t, std::size_t)>;

  static Machine finite(Tree p, Tree q, std::size_t states, std::size_t start, FiniteActFn act,
                        FiniteUpdFn upd);
  static Machine opaque(Tree p, Tree q, State start, ActFn act, UpdFn upd);

  const Tree& source() const { return p_; }
  const Tree& target() const { return q_; }
  bool finite_state() const { return states_.has_value(); }
  std::size_t state_count() const;
  std::size_t start_index() const;
  const State& start() const { return start_; }

  PolyMap act(const State& s, const Tree& pn, const Tree& qn) const { return act_(s, pn, qn); }
  State upd(const State& s, const Tree& pn, const Tree& qn, std::size_t i, std::size_t e) const {
    return upd_(s, pn, qn, i, e);
  }

  // Finite-state conveniences.
  PolyMap act(std::size_t s, const Tree& pn, const Tree& qn) const;
  std::size_t upd_index(std::size_t s, const Tree& pn, const Tree& qn, std::size_t i,
                        std::size_t e) const;

private:
  Tree p_, q_;
  std::optional<std::size_t> states_;
  State start_;
  ActFn act_;
  UpdFn upd_;
};

/// State of a composed machine: the two component states plus the current
/// node of the shared middle tree.
struct CompositeState {
  Machine::State first;
  Machine::State second;
  Tree middle;
};

struct MachineCheck {
  bool ok = true;
  std::string message;
  std::optional<std::array<std::size_t, 3>> triple;  // (state, p node, q node)
  explicit operator bool() const { return ok; }
};

struct ReachableTriple {
  std::size_t state;
  Tree pn, qn;
};

/// All (state, node, node) triples reachable from every state at the root
/// pair, for a finite machine over finite trees.
std::vector<ReachableTriple> reachable_triples(const Machine& m);

/// Checks both machine invariants over all reachable triples.
MachineCheck validate_machine(const Machine& m);

/// The depth-n morphism obtained by running the machine from its start
/// state. Throws when an action does not match the current codes.
TruncMorphism unfold_machine(const Machine& m, std::size_t depth);

Machine identity_machine(const Tree& t);

/// Composition through a shared middle tree: states pair up and the middle
/// node is tracked alongside. Finite whenever both machines and the middle
/// tree are finite.
Machine compose_machines(const Machine& m, const Machine& n);

/// Whether f (a function between the state sets) intertwines actions and
/// updates at every reachable triple. Both machines must be finite, over
/// the same trees.
bool check_machine_map(const std::vector<std::size_t>& f, const Machine& m, const Machine& n);

/// A coalgebra over the internal hom of p and q, run identically at every
/// node pair of the constant trees. The overload with explicit trees lets
/// several embedded machines share tree presentations for composition.
Machine embed_coalgebra(const PolyCode& p, const PolyCode& q, const SetCoalgebra& beta,
                        const Budget& budget = {});
Machine embed_coalgebra(const PolyCode& p, const PolyCode& q, const SetCoalgebra& beta, Tree tp,
                        Tree tq, const Budget& budget = {});

/// True iff actions and updates are independent of the node pair. Requires
/// a finite machine over trees whose reachable nodes all carry one fixed
/// polynomial each.
bool is_time_invariant(const Machine& m);

/// Root-level data of a machine over constant trees, as a coalgebra.
SetCoalgebra retract_to_coalgebra(const Machine& m, const Budget& budget = {});

/// Single-state machines are exactly depth-indexed morphisms.
TruncMorphism s1_to_trunc(const Machine& m, std::size_t depth);
Machine trunc_to_s1(const TruncMorphism& f, Tree p, Tree q);

/// Single-state machines witnessing a strategy decision: a map from (into)
/// the unit tree synthesized from the fixpoint's choice function. Empty
/// when no strategy exists.
std::optional<Machine> from_y_witness(const Tree& t);
std::optional<Machine> to_y_witness(const Tree& t);

}  // namespace polytree

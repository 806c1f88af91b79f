#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polytree {

struct LawConfig {
  std::size_t depth = 3;           // tower depth for morphism-level suites (max 4)
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 17;
  std::size_t samples = 100;       // randomized cases when a hom set is large
  std::size_t exhaustive_limit = 200;
};

enum class LawStatus { pass, fail, skip };

struct LawResult {
  std::string name;
  LawStatus status = LawStatus::pass;
  std::string detail;
};

/// Runs every law suite: category, functor and coherence laws, tower
/// projections, hom-count correspondences, closure, state-machine
/// recovery, the coalgebra embedding, game and protocol fixtures, and the
/// progressive-learner invariants. Suites that exceed the budget are
/// reported as skipped.
std::vector<LawResult> run_law_suites(const LawConfig& config = {});

}  // namespace polytree

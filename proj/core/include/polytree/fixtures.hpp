#pragma once

#include "polytree/budget.hpp"
#include "polytree/machine.hpp"
#include "polytree/poly.hpp"
#include "polytree/tree.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polytree {

// Session protocol: a server offering login (success/failure) and quit,
// whose authenticated interface offers queries, writes, and logout. The
// string and integer alphabets are finitized to configurable sizes.

Tree login_tree(std::size_t str_n = 3, std::size_t int_n = 2);

/// Same protocol without the write operation.
Tree readonly_tree(std::size_t str_n = 3);

/// Single-state machine embedding the read-only protocol into the full
/// one; its action never targets a write position.
Machine readonly_refinement(std::size_t str_n = 3, std::size_t int_n = 2);

// Differentiating cell over a set of L concentration levels: it outputs a
// level and reads three receptors. A maximal third receptor kills the
// cell, else a maximal first receptor turns it into a single-receptor
// neuron, else it keeps growing.

Tree cell_tree(std::size_t levels = 2);

/// Single-state machine implementing a fixed one-channel organ interface
/// with three cells in parallel: outputs aggregate by maximum and the
/// environment signal is broadcast to every receptor.
Machine organ_machine(std::size_t levels = 2, const Budget& budget = {});

// Take-away game trees. A move that empties the heap ends the branch; an
// opponent reply that empties it leads to the dead interface.

struct NimRule {
  std::size_t heap = 0;
  std::vector<std::size_t> takes = {1, 2};
};

Tree nim_tree(const NimRule& rule);

/// Variant with an extra zero-direction "concede" position at every node,
/// so that a strategy always exists and losses are explicit outcomes.
Tree nim_with_outcomes(const NimRule& rule);

/// First-player win by direct win/loss recursion on heap sizes. Used as an
/// oracle against the tree-based strategy decision.
bool nim_first_player_wins(const NimRule& rule);

/// Whether the responder can always answer every move without being the
/// one to empty the heap (the dual decision).
bool nim_responder_survives(const NimRule& rule);

// Progressive learner demo: a linear generator mapping a fixed latent
// interface onto an image interface whose resolution can grow, adversarially
// coupled to a linear discriminator. Signals are quantized to a finite
// symmetric grid so every arity is finite; weights remain real-valued
// opaque machine state.

struct ProgressiveConfig {
  std::size_t latent_dim = 2;
  std::vector<std::size_t> resolutions = {1, 2};  // strictly increasing pixel counts
  std::size_t quant_levels = 3;                   // odd, symmetric about 0
  double quant_step = 1.0;
  double threshold = 0.5;       // grow when the cotangent sup-norm is <= threshold
  double learning_rate = 0.1;
  std::uint64_t seed = 42;
};

void validate(const ProgressiveConfig& cfg);

/// Quantized n-pixel channel: one position per image on the grid, one
/// direction per cotangent on the same grid.
PolyCode channel_poly(const ProgressiveConfig& cfg, std::size_t n);

/// Values of the grid point encoded by a flat index, coordinate-major.
std::vector<double> decode_signal(const ProgressiveConfig& cfg, std::size_t n, std::size_t index);
std::size_t encode_signal(const ProgressiveConfig& cfg, const std::vector<double>& values);

/// The resolution ladder: node l is the interface at resolution l; small
/// received cotangents (sup-norm <= threshold) grow to the next level, the
/// final level is constant.
Tree progressive_tree(const ProgressiveConfig& cfg);

std::vector<double> initial_generator_weights(const ProgressiveConfig& cfg);
std::vector<double> initial_discriminator_weights(const ProgressiveConfig& cfg);

/// Gradient-ascent generator with opaque weight state over
/// (constant latent interface) -> (progressive image interface).
Machine progressive_generator(const ProgressiveConfig& cfg, Tree target,
                              std::vector<double> weights);
Machine progressive_generator(const ProgressiveConfig& cfg);

/// Gradient-descent discriminator over
/// (progressive image interface) -> (constant scalar interface).
Machine progressive_discriminator(const ProgressiveConfig& cfg, Tree source,
                                  std::vector<double> weights);
Machine progressive_discriminator(const ProgressiveConfig& cfg);

struct ProgressiveStep {
  std::size_t step = 0;
  std::size_t level = 0;          // before the update
  std::size_t level_after = 0;
  std::size_t latent = 0;         // drawn latent position
  std::size_t position = 0;       // image position at the evolving interface
  std::size_t direction = 0;      // cotangent received at the evolving interface
  std::size_t out_direction = 0;  // drawn cotangent at the scalar interface
  bool grew = false;
  std::vector<double> gen_weights;   // after the update
  std::vector<double> disc_weights;  // after the update
};

struct ProgressiveTrajectory {
  ProgressiveConfig config;
  std::vector<ProgressiveStep> steps;
};

/// Runs the composed generator-discriminator machine for the given number
/// of rounds with seeded pseudo-random latents and loss cotangents.
/// Deterministic given the config.
ProgressiveTrajectory progressive_demo(const ProgressiveConfig& cfg, std::size_t steps);

}  // namespace polytree

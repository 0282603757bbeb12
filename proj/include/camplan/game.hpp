#pragma once

#include <cstdint>
#include <vector>

#include "camplan/coverage.hpp"

namespace camplan {

/// Per-target payoffs. Rewards apply when the attacked target is watched by
/// an upgraded camera, penalties when it is not. Rewards live in [0,1],
/// penalties in [-1,0], and watching must strictly beat not watching for the
/// defender while strictly hurting the adversary.
struct PayoffSet {
  std::vector<double> reward_defender;
  std::vector<double> penalty_defender;
  std::vector<double> reward_adversary;
  std::vector<double> penalty_adversary;

  friend bool operator==(const PayoffSet&, const PayoffSet&) = default;
};

/// One security-game instance: the defender commits to a distribution over J
/// pure strategies (each a set of camera blocks to upgrade simultaneously);
/// the adversary observes the distribution and attacks one target block.
struct GameInstance {
  int n_targets = 0;
  /// Sparse coverage matrix: row j lists the targets upgraded by pure
  /// strategy j, sorted ascending, no duplicates. Every target must appear
  /// in at least one row.
  std::vector<std::vector<int>> strategies;
  PayoffSet payoffs;
  /// Optional mapping from target index to grid linear block index (size 0
  /// or n_targets); used only for reporting.
  std::vector<int64_t> target_blocks;

  std::size_t n_strategies() const { return strategies.size(); }

  /// Throws std::invalid_argument when any structural invariant fails.
  void validate() const;

  /// True when rewards and penalties cancel pairwise across the two players.
  bool is_zero_sum(double tol = 1e-12) const;

  friend bool operator==(const GameInstance&, const GameInstance&) = default;
};

/// Defender mixed strategy: probability a_j on pure strategy j, plus the
/// induced per-target marginal coverage x_i = sum_j a_j A_ij.
struct MixedStrategy {
  std::vector<double> probs;
  std::vector<double> marginals;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

struct DefenderEval {
  double defender_utility = 0.0;
  double adversary_utility = 0.0;
  int attacked_target = 0;
};

struct GameSolution {
  MixedStrategy mixed;
  int attacked_target = 0;
  double defender_utility = 0.0;
  double adversary_utility = 0.0;
};

/// Normalized block importance: total dwell traffic of each placed block
/// divided by the maximum across them, so the result lies in (0,1] with at
/// least one exact 1. Throws std::invalid_argument when a block has zero
/// traffic (importance would vanish) or the list is empty.
std::vector<double> importance_from_traffic(const CoverageModel& model,
                                            const std::vector<int64_t>& placed_blocks);

/// Zero-sum payoffs from importance: both players' reward equals the
/// importance, both penalties its negation. Importance entries must lie in
/// (0,1].
PayoffSet zero_sum_payoffs(const std::vector<double>& importance);

/// Assembles and validates a zero-sum instance in one step.
GameInstance make_zero_sum_game(const std::vector<double>& importance,
                                std::vector<std::vector<int>> strategies,
                                std::vector<int64_t> target_blocks = {});

/// J random defender pure strategies of exactly k targets each, drawn
/// uniformly without replacement from a seeded generator, followed by a
/// deterministic repair pass that guarantees every target is covered by at
/// least one strategy. Requires 1 <= k <= n_targets and J*k >= n_targets.
std::vector<std::vector<int>> generate_pure_strategies(int n_targets, int n_strategies,
                                                       int k_per_strategy, uint64_t seed);

/// x = A^T a. Validates dimensions and that probs is a distribution
/// (entries >= 0, summing to 1 within 1e-6).
std::vector<double> marginals(const GameInstance& game, const std::vector<double>& probs);

/// Per-target expected utilities under marginal coverage x:
/// defender x*R_d + (1-x)*P_d, adversary x*P_a + (1-x)*R_a.
struct UtilityProfile {
  std::vector<double> defender;
  std::vector<double> adversary;
};
UtilityProfile expected_utilities(const GameInstance& game, const std::vector<double>& x);

/// Adversary best response: the target with maximal adversary utility.
/// Near-ties (within 1e-9) are broken in the defender's favor, then by the
/// lowest index, so the choice is deterministic and attains the strong
/// Stackelberg convention.
int best_response(const std::vector<double>& adversary_utility,
                  const std::vector<double>& defender_utility);

/// Optimal defender mixed strategy against a best-response adversary,
/// computed exactly by decomposition: one small LP per candidate attacked
/// target (maximize the defender's utility there subject to that target
/// being an adversary best response), keeping the feasible target with the
/// greatest objective. Throws SolverError if no target admits a feasible LP
/// (impossible for consistent instances) or the LP solver misbehaves.
GameSolution solve_mixed_strategy(const GameInstance& game);

/// a_j = 1/J.
MixedStrategy uniform_strategy(const GameInstance& game);

/// Among the pure strategies covering the most important target (highest
/// defender reward, ties to the lowest target index), the one whose induced
/// best response leaves the defender best off; ties to the lowest strategy
/// index. Returned as a degenerate mixed strategy.
MixedStrategy best_pure_strategy(const GameInstance& game);

/// Recomputes the adversary's best response to `mixed` and both players'
/// expected utilities at the attacked target.
DefenderEval evaluate_defender(const GameInstance& game, const MixedStrategy& mixed);

}  // namespace camplan

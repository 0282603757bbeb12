#include "camplan/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "camplan/errors.hpp"
#include "camplan/lp.hpp"

namespace camplan {

namespace {

constexpr double kTieTol = 1e-9;       // adversary indifference width
constexpr double kViolationTol = 1e-9; // constraint generation cutoff

void check_payoff_vector(const std::vector<double>& v, std::size_t n, double lo, double hi,
                         const char* what) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string("game: ") + what + " size mismatch");
  }
  for (double p : v) {
    if (!(p >= lo && p <= hi)) {
      throw std::invalid_argument(std::string("game: ") + what + " out of range");
    }
  }
}

// Uniform integer in [0, bound) from a raw 64-bit stream, by rejection, so
// the draw sequence never depends on a library's distribution internals.
uint64_t bounded_draw(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::vector<double> raw_marginals(const GameInstance& game, const std::vector<double>& probs) {
  std::vector<double> x(static_cast<std::size_t>(game.n_targets), 0.0);
  for (std::size_t j = 0; j < game.strategies.size(); ++j) {
    const double a = probs[j];
    if (a == 0.0) continue;
    for (int i : game.strategies[j]) x[static_cast<std::size_t>(i)] += a;
  }
  for (double& v : x) v = std::min(1.0, std::max(0.0, v));
  return x;
}

}  // namespace

void GameInstance::validate() const {
  if (n_targets <= 0) throw std::invalid_argument("game: n_targets must be positive");
  if (strategies.empty()) throw std::invalid_argument("game: no pure strategies");
  const std::size_t n = static_cast<std::size_t>(n_targets);
  std::vector<int> cover(n, 0);
  for (const auto& row : strategies) {
    int prev = -1;
    for (int t : row) {
      if (t < 0 || t >= n_targets) {
        throw std::invalid_argument("game: strategy references unknown target");
      }
      if (t <= prev) {
        throw std::invalid_argument("game: strategy rows must be sorted and duplicate-free");
      }
      prev = t;
      ++cover[static_cast<std::size_t>(t)];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cover[i] == 0) {
      throw std::invalid_argument("game: target " + std::to_string(i) +
                                  " is covered by no pure strategy");
    }
  }
  check_payoff_vector(payoffs.reward_defender, n, 0.0, 1.0, "reward_defender");
  check_payoff_vector(payoffs.reward_adversary, n, 0.0, 1.0, "reward_adversary");
  check_payoff_vector(payoffs.penalty_defender, n, -1.0, 0.0, "penalty_defender");
  check_payoff_vector(payoffs.penalty_adversary, n, -1.0, 0.0, "penalty_adversary");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(payoffs.reward_defender[i] > payoffs.penalty_defender[i])) {
      throw std::invalid_argument("game: covering must strictly help the defender");
    }
    if (!(payoffs.reward_adversary[i] > payoffs.penalty_adversary[i])) {
      throw std::invalid_argument("game: covering must strictly deter the adversary");
    }
  }
  if (!target_blocks.empty() && target_blocks.size() != n) {
    throw std::invalid_argument("game: target_blocks size mismatch");
  }
  for (int64_t b : target_blocks) {
    if (b < 0) throw std::invalid_argument("game: negative target block index");
  }
}

bool GameInstance::is_zero_sum(double tol) const {
  const std::size_t n = static_cast<std::size_t>(n_targets);
  if (payoffs.reward_defender.size() != n || payoffs.penalty_adversary.size() != n ||
      payoffs.reward_adversary.size() != n || payoffs.penalty_defender.size() != n) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(payoffs.reward_defender[i] + payoffs.penalty_adversary[i]) > tol) return false;
    if (std::abs(payoffs.reward_adversary[i] + payoffs.penalty_defender[i]) > tol) return false;
  }
  return true;
}

std::vector<double> importance_from_traffic(const CoverageModel& model,
                                            const std::vector<int64_t>& placed_blocks) {
  if (placed_blocks.empty()) {
    throw std::invalid_argument("game: importance needs at least one block");
  }
  std::vector<double> traffic(placed_blocks.size());
  double max_traffic = 0.0;
  for (std::size_t i = 0; i < placed_blocks.size(); ++i) {
    traffic[i] = model.block_traffic(placed_blocks[i]);
    if (traffic[i] <= 0.0) {
      throw std::invalid_argument("game: block " + std::to_string(placed_blocks[i]) +
                                  " has zero traffic");
    }
    max_traffic = std::max(max_traffic, traffic[i]);
  }
  for (double& t : traffic) t /= max_traffic;
  return traffic;
}

PayoffSet zero_sum_payoffs(const std::vector<double>& importance) {
  if (importance.empty()) throw std::invalid_argument("game: empty importance vector");
  PayoffSet p;
  p.reward_defender.reserve(importance.size());
  for (double imp : importance) {
    if (!(imp > 0.0 && imp <= 1.0)) {
      throw std::invalid_argument("game: importance must lie in (0, 1]");
    }
    p.reward_defender.push_back(imp);
    p.penalty_defender.push_back(-imp);
    p.reward_adversary.push_back(imp);
    p.penalty_adversary.push_back(-imp);
  }
  return p;
}

GameInstance make_zero_sum_game(const std::vector<double>& importance,
                                std::vector<std::vector<int>> strategies,
                                std::vector<int64_t> target_blocks) {
  GameInstance g;
  g.n_targets = static_cast<int>(importance.size());
  g.strategies = std::move(strategies);
  g.payoffs = zero_sum_payoffs(importance);
  g.target_blocks = std::move(target_blocks);
  g.validate();
  return g;
}

std::vector<std::vector<int>> generate_pure_strategies(int n_targets, int n_strategies,
                                                       int k_per_strategy, uint64_t seed) {
  if (n_targets < 1 || n_strategies < 1 || k_per_strategy < 1) {
    throw std::invalid_argument("game: strategy generation needs positive sizes");
  }
  if (k_per_strategy > n_targets) {
    throw std::invalid_argument("game: k_per_strategy exceeds target count");
  }
  if (static_cast<int64_t>(n_strategies) * k_per_strategy < n_targets) {
    throw std::invalid_argument("game: J*k too small to cover every target");
  }
  const std::size_t n = static_cast<std::size_t>(n_targets);
  const std::size_t jn = static_cast<std::size_t>(n_strategies);
  const std::size_t k = static_cast<std::size_t>(k_per_strategy);

  std::mt19937_64 rng(seed);
  std::vector<int> pool(n);
  std::vector<std::vector<int>> rows(jn);
  for (std::size_t j = 0; j < jn; ++j) {
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t pickat = i + static_cast<std::size_t>(bounded_draw(rng, n - i));
      std::swap(pool[i], pool[pickat]);
    }
    rows[j].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(rows[j].begin(), rows[j].end());
  }

  // Repair pass: give every uncovered target a slot by evicting, from some
  // row, a target that is covered at least twice. The scan order (rows
  // starting at i mod J, members ascending) is fixed, so the repaired matrix
  // is a pure function of the seed.
  std::vector<int> cover(n, 0);
  for (const auto& row : rows) {
    for (int t : row) ++cover[static_cast<std::size_t>(t)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cover[i] > 0) continue;
    bool placed = false;
    for (std::size_t attempt = 0; attempt < jn && !placed; ++attempt) {
      std::vector<int>& row = rows[(i + attempt) % jn];
      for (std::size_t m = 0; m < row.size(); ++m) {
        const std::size_t victim = static_cast<std::size_t>(row[m]);
        if (cover[victim] < 2) continue;
        --cover[victim];
        ++cover[i];
        row.erase(row.begin() + static_cast<std::ptrdiff_t>(m));
        row.insert(std::lower_bound(row.begin(), row.end(), static_cast<int>(i)),
                   static_cast<int>(i));
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Unreachable: J*k >= n guarantees some target is covered twice while
      // any target is uncovered, and its row never contains target i.
      throw std::logic_error("game: coverage repair failed");
    }
  }
  return rows;
}

std::vector<double> marginals(const GameInstance& game, const std::vector<double>& probs) {
  if (probs.size() != game.strategies.size()) {
    throw std::invalid_argument("game: probability vector size mismatch");
  }
  double sum = 0.0;
  for (double a : probs) {
    if (!(a >= 0.0) || a > 1.0 + 1e-9) {
      throw std::invalid_argument("game: probabilities must lie in [0, 1]");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("game: probabilities must sum to 1");
  }
  return raw_marginals(game, probs);
}

UtilityProfile expected_utilities(const GameInstance& game, const std::vector<double>& x) {
  const std::size_t n = static_cast<std::size_t>(game.n_targets);
  if (x.size() != n) throw std::invalid_argument("game: marginal vector size mismatch");
  UtilityProfile u;
  u.defender.resize(n);
  u.adversary.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    u.defender[i] = x[i] * game.payoffs.reward_defender[i] +
                    (1.0 - x[i]) * game.payoffs.penalty_defender[i];
    u.adversary[i] = x[i] * game.payoffs.penalty_adversary[i] +
                     (1.0 - x[i]) * game.payoffs.reward_adversary[i];
  }
  return u;
}

int best_response(const std::vector<double>& adversary_utility,
                  const std::vector<double>& defender_utility) {
  if (adversary_utility.empty() || adversary_utility.size() != defender_utility.size()) {
    throw std::invalid_argument("game: best response needs matching non-empty utilities");
  }
  double best_ua = adversary_utility[0];
  for (double u : adversary_utility) best_ua = std::max(best_ua, u);
  int pick = -1;
  for (std::size_t i = 0; i < adversary_utility.size(); ++i) {
    if (adversary_utility[i] < best_ua - kTieTol) continue;
    if (pick < 0 || defender_utility[i] > defender_utility[static_cast<std::size_t>(pick)]) {
      pick = static_cast<int>(i);
    }
  }
  return pick;
}

DefenderEval evaluate_defender(const GameInstance& game, const MixedStrategy& mixed) {
  game.validate();
  const std::vector<double> x = marginals(game, mixed.probs);
  const UtilityProfile u = expected_utilities(game, x);
  DefenderEval eval;
  eval.attacked_target = best_response(u.adversary, u.defender);
  eval.defender_utility = u.defender[static_cast<std::size_t>(eval.attacked_target)];
  eval.adversary_utility = u.adversary[static_cast<std::size_t>(eval.attacked_target)];
  return eval;
}

GameSolution solve_mixed_strategy(const GameInstance& game) {
  game.validate();
  const std::size_t n = static_cast<std::size_t>(game.n_targets);
  const std::size_t jn = game.strategies.size();

  // Dense columns of the coverage matrix: column[i][j] = 1 iff strategy j
  // upgrades target i.
  std::vector<std::vector<double>> column(n, std::vector<double>(jn, 0.0));
  for (std::size_t j = 0; j < jn; ++j) {
    for (int i : game.strategies[j]) column[static_cast<std::size_t>(i)][j] = 1.0;
  }
  std::vector<double> gap_a(n);  // reward minus penalty, always positive
  for (std::size_t i = 0; i < n; ++i) {
    gap_a[i] = game.payoffs.reward_adversary[i] - game.payoffs.penalty_adversary[i];
  }

  bool have_best = false;
  double best_value = 0.0;
  std::vector<double> best_probs;

  for (std::size_t t = 0; t < n; ++t) {
    // LP over a: maximize the defender's utility at t subject to t being an
    // adversary best response. Constraints U^a_k <= U^a_t are generated
    // lazily: solve with a subset of rows, add the most violated missing
    // one, repeat. A restricted problem is a relaxation, so restricted
    // infeasibility proves the full problem infeasible, and a solution
    // violating nothing is optimal for the full problem.
    LpProblem lp;
    lp.objective.resize(jn);
    const double gap_d =
        game.payoffs.reward_defender[t] - game.payoffs.penalty_defender[t];
    for (std::size_t j = 0; j < jn; ++j) lp.objective[j] = column[t][j] * gap_d;
    lp.eq_lhs.push_back(std::vector<double>(jn, 1.0));
    lp.eq_rhs.push_back(1.0);

    std::vector<char> added(n, 0);
    added[t] = 1;
    LpResult res;
    bool feasible = true;
    bool optimal = false;
    while (!optimal) {
      res = solve_lp(lp);
      if (res.status == LpStatus::infeasible) {
        feasible = false;
        break;
      }
      if (res.status != LpStatus::optimal) {
        throw SolverError("game: per-target LP neither optimal nor infeasible");
      }
      const std::vector<double> x = raw_marginals(game, res.x);
      const double ua_t = game.payoffs.reward_adversary[t] - x[t] * gap_a[t];
      std::size_t worst = n;
      double worst_violation = kViolationTol;
      for (std::size_t k = 0; k < n; ++k) {
        if (added[k]) continue;
        const double ua_k = game.payoffs.reward_adversary[k] - x[k] * gap_a[k];
        const double violation = ua_k - ua_t;
        if (violation > worst_violation) {
          worst_violation = violation;
          worst = k;
        }
      }
      if (worst == n) {
        optimal = true;
      } else {
        // x_t gap_t - x_k gap_k <= R^a_t - R^a_k, expressed over a.
        std::vector<double> row(jn);
        for (std::size_t j = 0; j < jn; ++j) {
          row[j] = column[t][j] * gap_a[t] - column[worst][j] * gap_a[worst];
        }
        lp.ineq_lhs.push_back(std::move(row));
        lp.ineq_rhs.push_back(game.payoffs.reward_adversary[t] -
                              game.payoffs.reward_adversary[worst]);
        added[worst] = 1;
      }
    }
    if (!feasible) continue;

    const double value = res.value + game.payoffs.penalty_defender[t];
    if (!have_best || value > best_value) {
      have_best = true;
      best_value = value;
      best_probs = res.x;
    }
  }

  if (!have_best) {
    throw SolverError("game: no candidate target admits a feasible strategy");
  }

  // Tidy the winning distribution: clip solver dust and renormalise.
  double sum = 0.0;
  for (double& a : best_probs) {
    a = std::max(0.0, a);
    sum += a;
  }
  if (!(sum > 0.0)) throw SolverError("game: degenerate optimal distribution");
  for (double& a : best_probs) a /= sum;

  GameSolution solution;
  solution.mixed.probs = std::move(best_probs);
  solution.mixed.marginals = raw_marginals(game, solution.mixed.probs);
  const DefenderEval eval = evaluate_defender(game, solution.mixed);
  solution.attacked_target = eval.attacked_target;
  solution.defender_utility = eval.defender_utility;
  solution.adversary_utility = eval.adversary_utility;
  return solution;
}

MixedStrategy uniform_strategy(const GameInstance& game) {
  game.validate();
  MixedStrategy m;
  m.probs.assign(game.strategies.size(), 1.0 / static_cast<double>(game.strategies.size()));
  m.marginals = raw_marginals(game, m.probs);
  return m;
}

MixedStrategy best_pure_strategy(const GameInstance& game) {
  game.validate();
  const std::size_t n = static_cast<std::size_t>(game.n_targets);
  std::size_t vip = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (game.payoffs.reward_defender[i] > game.payoffs.reward_defender[vip]) vip = i;
  }
  int best_j = -1;
  double best_ud = 0.0;
  MixedStrategy best;
  for (std::size_t j = 0; j < game.strategies.size(); ++j) {
    const auto& row = game.strategies[j];
    if (!std::binary_search(row.begin(), row.end(), static_cast<int>(vip))) continue;
    MixedStrategy m;
    m.probs.assign(game.strategies.size(), 0.0);
    m.probs[j] = 1.0;
    m.marginals = raw_marginals(game, m.probs);
    const DefenderEval eval = evaluate_defender(game, m);
    if (best_j < 0 || eval.defender_utility > best_ud) {
      best_j = static_cast<int>(j);
      best_ud = eval.defender_utility;
      best = std::move(m);
    }
  }
  if (best_j < 0) {
    // Unreachable: validate() guarantees every target is covered.
    throw std::logic_error("game: most important target covered by no strategy");
  }
  return best;
}

}  // namespace camplan

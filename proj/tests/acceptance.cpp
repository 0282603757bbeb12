// Acceptance harness. Exercises the toolkit end to end and prints one
// [PASS]/[FAIL] line per criterion; exits non-zero if any criterion fails.
//
// Usage: camplan_acceptance <path-to-camplan-cli>
// The CLI path is needed by the final byte-determinism criterion, which
// spawns the real binary twice and compares every produced artifact.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "camplan/coverage.hpp"
#include "camplan/game.hpp"
#include "camplan/geo_grid.hpp"
#include "camplan/lp.hpp"
#include "camplan/metrics.hpp"
#include "camplan/placement.hpp"
#include "camplan/synth.hpp"
#include "camplan/trajectory.hpp"
#include "lp_oracle.hpp"

namespace fs = std::filesystem;
using namespace camplan;
using lp_oracle::TestRng;

namespace {

constexpr double kPi = 3.14159265358979323846;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// a >= b up to a relative slack.
bool ge(double a, double b, double tol) {
  return a >= b - tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// Bounds producing an exactly n_rows x n_cols grid at the given cell size
/// (the extent is one meter short of the next cell boundary).
LatLonBounds square_bounds(int n_rows, int n_cols, double cell_m) {
  const double lat_lo = 39.90, lon_lo = 116.30;
  const double lat_hi = lat_lo + (n_rows * cell_m - 1.0) / Grid::kMetersPerDegLat;
  const double mid = 0.5 * (lat_lo + lat_hi);
  const double m_per_deg_lon = Grid::kMetersPerDegLat * std::cos(mid * kPi / 180.0);
  const double lon_hi = lon_lo + (n_cols * cell_m - 1.0) / m_per_deg_lon;
  return {lat_lo, lat_hi, lon_lo, lon_hi};
}

/// Random coverage model: each vehicle gets a sequence of random block
/// visits with random dwell times over an n_rows x n_cols grid.
CoverageModel random_model(TestRng& rng, int n_vehicles, int n_rows, int n_cols,
                           int max_visits) {
  const Grid grid = Grid::from_bounds(square_bounds(n_rows, n_cols, 50.0), 50.0);
  std::vector<BlockVisit> visits;
  for (int v = 0; v < n_vehicles; ++v) {
    char id[16];
    std::snprintf(id, sizeof(id), "v%04d", v + 1);
    int64_t t = 0;
    const int n_visits = static_cast<int>(rng.uniform_int(1, max_visits));
    for (int k = 0; k < n_visits; ++k) {
      const BlockId block{static_cast<int32_t>(rng.uniform_int(0, n_rows - 1)),
                          static_cast<int32_t>(rng.uniform_int(0, n_cols - 1))};
      const int64_t dwell = rng.uniform_int(10, 240);
      visits.push_back({id, block, t, t + dwell});
      t += dwell + rng.uniform_int(1, 60);
    }
  }
  return CoverageModel::build(grid, visits);
}

// ---------------------------------------------------------------------------
// Synthetic city: 500 vehicles roaming a 200x200 grid of 50 m blocks for
// seven days. Strong home bias with tight neighbourhoods makes the fleet
// spatially heterogeneous: most vehicles can only be covered near their own
// patch, so full coverage genuinely needs hundreds of blocks.
// ---------------------------------------------------------------------------

constexpr uint64_t kMainCitySeed = 1007;

SynthSpec city_spec(uint64_t seed) {
  SynthSpec spec;
  spec.bounds = square_bounds(200, 200, 50.0);
  spec.n_vehicles = 500;
  spec.duration_s = 7 * 86400;
  spec.sample_interval_s = 300;
  spec.speed_min_mps = 2.0;
  spec.speed_max_mps = 8.0;
  spec.home_bias = 1.0;
  spec.home_sigma_m = 250.0;
  spec.seed = seed;
  return spec;
}

CoverageModel build_city(uint64_t seed) {
  const SynthSpec spec = city_spec(seed);
  const Grid grid = Grid::from_bounds(spec.bounds, 50.0);
  std::vector<BlockVisit> visits;
  for (int v = 0; v < spec.n_vehicles; ++v) {
    const Trajectory traj{synth_vehicle_id(spec, v), synth_vehicle_track(spec, v)};
    std::vector<BlockVisit> part = segment_dwell(traj, grid, 600);
    visits.insert(visits.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  return CoverageModel::build(grid, visits);
}

const CoverageModel& main_city() {
  static const CoverageModel model = build_city(kMainCitySeed);
  return model;
}

/// Smallest placement prefix covering every vehicle, or SIZE_MAX.
std::size_t first_full_cover(const CoverageModel& model,
                             const std::vector<int64_t>& blocks) {
  std::vector<char> seen(static_cast<std::size_t>(model.vehicle_count()), 0);
  int covered = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (const CoverageModel::Entry& e : model.block_entries(blocks[i])) {
      if (!seen[static_cast<std::size_t>(e.vehicle)]) {
        seen[static_cast<std::size_t>(e.vehicle)] = 1;
        ++covered;
      }
    }
    if (covered == model.vehicle_count()) return i + 1;
  }
  return SIZE_MAX;
}

// ---------------------------------------------------------------------------
// Criterion 1: every objective is monotone with diminishing returns.
// ---------------------------------------------------------------------------

bool crit_diminishing_returns(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  TestRng rng(20260814);
  int checked = 0;
  for (Strategy s : kAllStrategies) {
    for (int model_i = 0; model_i < 5; ++model_i) {
      const CoverageModel model = random_model(rng, 50, 10, 10, 8);
      const std::vector<int64_t>& placeable = model.placeable_blocks();
      if (placeable.size() < 3) continue;
      std::vector<std::size_t> pool(placeable.size());
      for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
      for (int trial = 0; trial < 200; ++trial) {
        const int m2 = static_cast<int>(
            rng.uniform_int(0, std::min<int64_t>(10, static_cast<int64_t>(placeable.size()) - 1)));
        // partial shuffle picks m2 set members plus one outside candidate
        for (int i = 0; i <= m2; ++i) {
          const std::size_t j = static_cast<std::size_t>(
              rng.uniform_int(i, static_cast<int64_t>(pool.size()) - 1));
          std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }
        std::vector<int64_t> c2, c1;
        for (int i = 0; i < m2; ++i) {
          c2.push_back(placeable[pool[static_cast<std::size_t>(i)]]);
          if (rng.uniform() < 0.5) c1.push_back(c2.back());
        }
        const int64_t c = placeable[pool[static_cast<std::size_t>(m2)]];

        const double f1 = objective_value(model, s, c1);
        const double f2 = objective_value(model, s, c2);
        c1.push_back(c);
        c2.push_back(c);
        const double f1c = objective_value(model, s, c1);
        const double f2c = objective_value(model, s, c2);
        c1.pop_back();
        c2.pop_back();

        if (!ge(f1c, f1, 1e-9) || !ge(f2c, f2, 1e-9)) {
          note = "monotonicity violated: F grew by " + str(std::min(f1c - f1, f2c - f2));
          return false;
        }
        if (!ge(f1c - f1, f2c - f2, 1e-9)) {
          note = "diminishing returns violated: gain(small set) " + str(f1c - f1) +
                 " < gain(superset) " + str(f2c - f2);
          return false;
        }
        ++checked;
      }
    }
  }
  const double secs = seconds_since(t0);
  note = std::to_string(checked) + " random subset triples across 5 objectives";
  if (secs >= 10.0) {
    note += " but took " + str(secs) + " s (budget 10 s)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: greedy value is at least (1 - 1/e) of the exhaustive optimum.
// ---------------------------------------------------------------------------

bool crit_greedy_bound(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  TestRng rng(7119);
  const double bound = 1.0 - std::exp(-1.0);
  int instances = 0;
  for (int i = 0; i < 200; ++i) {
    const int n_vehicles = static_cast<int>(rng.uniform_int(2, 8));
    const CoverageModel model = random_model(rng, n_vehicles, 3, 4, 5);
    const int32_t budget = static_cast<int32_t>(rng.uniform_int(1, 4));
    for (Strategy s : kAllStrategies) {
      const Placement greedy = greedy_place(model, s, budget);
      const Placement best = exhaustive_place(model, s, budget);
      const double fg = greedy.steps.empty() ? 0.0 : greedy.steps.back().cumulative;
      const double fo = best.steps.empty() ? 0.0 : best.steps.back().cumulative;
      if (fg < bound * fo - 1e-9) {
        note = "instance " + std::to_string(i) + " strategy " + strategy_name(s) +
               ": greedy " + str(fg) + " < (1-1/e) * optimum " + str(fo);
        return false;
      }
    }
    ++instances;
  }
  const double secs = seconds_since(t0);
  note = std::to_string(instances) + " instances x 5 objectives vs exhaustive optimum";
  if (secs >= 30.0) {
    note += " but took " + str(secs) + " s (budget 30 s)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 3: lazy greedy selects exactly the same sequence as naive greedy.
// ---------------------------------------------------------------------------

bool crit_lazy_equivalence(std::string& note) {
  TestRng rng(90210);
  for (int i = 0; i < 100; ++i) {
    const int n_vehicles = static_cast<int>(rng.uniform_int(2, 10));
    const CoverageModel model = random_model(rng, n_vehicles, 4, 5, 6);
    const int32_t budget = static_cast<int32_t>(rng.uniform_int(1, 8));
    for (Strategy s : kAllStrategies) {
      const Placement lazy = greedy_place(model, s, budget);
      const Placement naive = greedy_place_naive(model, s, budget);
      if (lazy.steps.size() != naive.steps.size()) {
        note = "instance " + std::to_string(i) + ": step counts differ";
        return false;
      }
      for (std::size_t k = 0; k < lazy.steps.size(); ++k) {
        if (lazy.steps[k].block != naive.steps[k].block ||
            lazy.steps[k].gain != naive.steps[k].gain ||
            lazy.steps[k].cumulative != naive.steps[k].cumulative) {
          note = "instance " + std::to_string(i) + " strategy " + strategy_name(s) +
                 ": sequences diverge at step " + std::to_string(k);
          return false;
        }
      }
    }
  }
  note = "identical sequences on 100 instances x 5 objectives";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: the coverage-vs-budget curve of the coverage objective is
// concave non-decreasing, saturates before exhausting the placeable set, and
// saturates no later than the dwell objective does.
// ---------------------------------------------------------------------------

bool crit_saturation(std::string& note) {
  const CoverageModel& model = main_city();
  if (model.grid().n_rows() != 200 || model.grid().n_cols() != 200) {
    note = "city grid is not 200x200";
    return false;
  }
  const std::size_t n_placeable = model.placeable_blocks().size();

  const Placement p1 = greedy_place(model, Strategy::S1, model.vehicle_count());
  for (std::size_t i = 0; i < p1.steps.size(); ++i) {
    if (p1.steps[i].gain < -1e-9) {
      note = "negative marginal gain at step " + std::to_string(i);
      return false;
    }
    if (i > 0 && !ge(p1.steps[i - 1].gain, p1.steps[i].gain, 1e-9)) {
      note = "coverage curve not concave at step " + std::to_string(i);
      return false;
    }
  }
  if (ucr(model, p1.blocks()) < 1.0 - 1e-12) {
    note = "coverage greedy stopped below full coverage";
    return false;
  }
  const std::size_t n_star = p1.steps.size();
  if (n_star >= n_placeable) {
    note = "saturation only at the full placeable set";
    return false;
  }

  // How many dwell-greedy picks does the same full coverage take?
  std::size_t budget = std::max<std::size_t>(n_star, 64);
  std::size_t n_dwell = SIZE_MAX;
  while (true) {
    const Placement p2 = greedy_place(model, Strategy::S2, static_cast<int32_t>(budget));
    n_dwell = first_full_cover(model, p2.blocks());
    if (n_dwell != SIZE_MAX || budget >= n_placeable) break;
    budget = std::min(n_placeable, budget * 2);
  }
  if (n_dwell == SIZE_MAX) {
    note = "dwell greedy never reached full coverage";
    return false;
  }
  if (n_star > n_dwell) {
    note = "coverage greedy saturated later (" + std::to_string(n_star) +
           ") than dwell greedy (" + std::to_string(n_dwell) + ")";
    return false;
  }
  note = "full cover at " + std::to_string(n_star) + " of " +
         std::to_string(n_placeable) + " placeable blocks; dwell greedy needs " +
         std::to_string(n_dwell);
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: at a budget of 100, the dwell objective concentrates camera
// hits (largest Gini coefficient) compared with the saturating objectives,
// as a majority vote over five independent cities.
// ---------------------------------------------------------------------------

bool crit_fairness(std::string& note) {
  const uint64_t seeds[] = {kMainCitySeed, 2007, 3007, 4007, 5007};
  int holds = 0;
  for (uint64_t seed : seeds) {
    std::optional<CoverageModel> storage;
    const CoverageModel* model = nullptr;
    if (seed == kMainCitySeed) {
      model = &main_city();
    } else {
      storage.emplace(build_city(seed));
      model = &*storage;
    }
    std::map<Strategy, double> gini_of;
    for (Strategy s :
         {Strategy::S2, Strategy::S3, Strategy::S4, Strategy::S5}) {
      const Placement p = greedy_place(*model, s, 100);
      gini_of[s] = compute_metrics(*model, p.blocks()).gini_vch;
    }
    const double g2 = gini_of[Strategy::S2];
    if (g2 >= gini_of[Strategy::S3] && g2 >= gini_of[Strategy::S4] &&
        g2 >= gini_of[Strategy::S5]) {
      ++holds;
    }
  }
  note = "Gini ordering held in " + std::to_string(holds) + " of 5 cities";
  return holds >= 3;
}

// ---------------------------------------------------------------------------
// Criterion 6: the game solver is exact on instances with known solutions,
// cross-checked against an independent grid-search oracle.
// ---------------------------------------------------------------------------

/// Defender utility of an identity-matrix zero-sum game at marginals x,
/// evaluated independently of the library (adversary best response with
/// defender-favoring ties).
double identity_game_ud(const std::vector<double>& imp, const std::vector<double>& x) {
  double best_ua = -1e300, best_ud = -1e300;
  for (std::size_t i = 0; i < imp.size(); ++i) {
    const double ua = x[i] * -imp[i] + (1.0 - x[i]) * imp[i];
    const double ud = x[i] * imp[i] + (1.0 - x[i]) * -imp[i];
    if (ua > best_ua + 1e-12) {
      best_ua = ua;
      best_ud = ud;
    } else if (ua > best_ua - 1e-12 && ud > best_ud) {
      best_ud = ud;
    }
  }
  return best_ud;
}

double grid_oracle_2(const std::vector<double>& imp, double step) {
  double best = -1e300;
  for (double a1 = 0.0; a1 <= 1.0 + 1e-12; a1 += step) {
    const double p = std::min(a1, 1.0);
    best = std::max(best, identity_game_ud(imp, {p, 1.0 - p}));
  }
  return best;
}

double grid_oracle_3(const std::vector<double>& imp, double step) {
  double best = -1e300;
  for (double a1 = 0.0; a1 <= 1.0 + 1e-12; a1 += step) {
    for (double a2 = 0.0; a1 + a2 <= 1.0 + 1e-12; a2 += step) {
      const double p1 = std::min(a1, 1.0);
      const double p2 = std::min(a2, 1.0 - p1);
      best = std::max(best, identity_game_ud(imp, {p1, p2, 1.0 - p1 - p2}));
    }
  }
  return best;
}

bool crit_game_exactness(std::string& note) {
  {
    const std::vector<double> imp = {1.0, 0.5};
    const GameInstance game = make_zero_sum_game(imp, {{0}, {1}});
    const GameSolution sol = solve_mixed_strategy(game);
    if (std::abs(sol.defender_utility) > 1e-6) {
      note = "two-target instance: U_d = " + str(sol.defender_utility) + ", expected 0";
      return false;
    }
    for (double xi : sol.mixed.marginals) {
      if (std::abs(xi - 0.5) > 1e-6) {
        note = "two-target instance: marginals not [0.5, 0.5]";
        return false;
      }
    }
    const double oracle = grid_oracle_2(imp, 1e-4);
    if (std::abs(sol.defender_utility - oracle) > 1e-3) {
      note = "two-target instance: solver " + str(sol.defender_utility) +
             " vs grid oracle " + str(oracle);
      return false;
    }
  }
  {
    const std::vector<double> imp = {1.0, 1.0, 1.0};
    const GameInstance game = make_zero_sum_game(imp, {{0}, {1}, {2}});
    const GameSolution sol = solve_mixed_strategy(game);
    if (std::abs(sol.defender_utility - (-1.0 / 3.0)) > 1e-6) {
      note = "three-target instance: U_d = " + str(sol.defender_utility) +
             ", expected -1/3";
      return false;
    }
    for (double xi : sol.mixed.marginals) {
      if (std::abs(xi - 1.0 / 3.0) > 1e-6) {
        note = "three-target instance: marginals not uniform";
        return false;
      }
    }
    const double oracle = grid_oracle_3(imp, 1e-3);
    if (std::abs(sol.defender_utility - oracle) > 1e-3) {
      note = "three-target instance: solver " + str(sol.defender_utility) +
             " vs grid oracle " + str(oracle);
      return false;
    }
    const DefenderEval uniform_eval = evaluate_defender(game, uniform_strategy(game));
    if (std::abs(uniform_eval.defender_utility - (-1.0 / 3.0)) > 1e-9) {
      note = "uniform baseline on symmetric instance != -1/3";
      return false;
    }
  }
  note = "closed-form optima and 1e-3 grid oracles agree";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: on the city, for every placement strategy, the optimal mixed
// upgrade strategy dominates the uniform and best-pure baselines, with exact
// zero-sum bookkeeping.
// ---------------------------------------------------------------------------

bool crit_dominance(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  const CoverageModel& model = main_city();
  std::string detail;
  for (Strategy s : kAllStrategies) {
    const Placement placement = greedy_place(model, s, 500);
    const std::vector<int64_t> blocks = placement.blocks();
    if (blocks.size() < 50) {
      note = std::string(strategy_name(s)) + " placed only " +
             std::to_string(blocks.size()) + " blocks; need >= 50 upgrade slots";
      return false;
    }
    const std::vector<double> importance = importance_from_traffic(model, blocks);
    const GameInstance game = make_zero_sum_game(
        importance,
        generate_pure_strategies(static_cast<int>(blocks.size()), 100, 50, 424242),
        blocks);
    const GameSolution sol = solve_mixed_strategy(game);
    const DefenderEval uniform_eval = evaluate_defender(game, uniform_strategy(game));
    const DefenderEval pure_eval = evaluate_defender(game, best_pure_strategy(game));

    for (const DefenderEval* e : {&uniform_eval, &pure_eval}) {
      if (std::abs(e->defender_utility + e->adversary_utility) > 1e-9 ||
          std::abs(e->defender_utility) > 1.0 + 1e-9) {
        note = std::string(strategy_name(s)) + ": baseline utilities out of range";
        return false;
      }
    }
    if (std::abs(sol.defender_utility + sol.adversary_utility) > 1e-9) {
      note = std::string(strategy_name(s)) + ": U_d + U_a != 0";
      return false;
    }
    if (std::abs(sol.defender_utility) > 1.0 + 1e-9) {
      note = std::string(strategy_name(s)) + ": U_d outside [-1, 1]";
      return false;
    }
    if (sol.defender_utility < uniform_eval.defender_utility - 1e-6) {
      note = std::string(strategy_name(s)) + ": mixed " + str(sol.defender_utility) +
             " < uniform " + str(uniform_eval.defender_utility);
      return false;
    }
    if (sol.defender_utility < pure_eval.defender_utility - 1e-6) {
      note = std::string(strategy_name(s)) + ": mixed " + str(sol.defender_utility) +
             " < best pure " + str(pure_eval.defender_utility);
      return false;
    }
    detail += std::string(detail.empty() ? "" : " ") + strategy_name(s) + "=" +
              str(sol.defender_utility);
  }
  const double secs = seconds_since(t0);
  note = "mixed dominates both baselines; U_d: " + detail;
  if (secs >= 120.0) {
    note += " but took " + str(secs) + " s (budget 120 s)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: the LP solver agrees with a vertex-enumeration oracle on
// random bounded problems.
// ---------------------------------------------------------------------------

bool lp_point_feasible(const LpProblem& p, const std::vector<double>& x, double tol) {
  const std::size_t n = p.objective.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = p.lower.empty() ? 0.0 : p.lower[j];
    if (x[j] < lo - tol) return false;
    if (!p.upper.empty() && x[j] > p.upper[j] + tol) return false;
  }
  for (std::size_t i = 0; i < p.ineq_lhs.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += p.ineq_lhs[i][j] * x[j];
    if (lhs > p.ineq_rhs[i] + tol) return false;
  }
  for (std::size_t i = 0; i < p.eq_lhs.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += p.eq_lhs[i][j] * x[j];
    if (std::abs(lhs - p.eq_rhs[i]) > tol) return false;
  }
  return true;
}

bool crit_lp_oracle(std::string& note) {
  TestRng rng(31337);
  int optimal = 0, infeasible = 0;
  for (int i = 0; i < 500; ++i) {
    const LpProblem problem = lp_oracle::random_boxed_lp(rng, 6, 8);
    const LpResult got = solve_lp(problem);
    const lp_oracle::OracleResult want = lp_oracle::oracle_solve(problem);
    if (got.status != want.status) {
      note = "problem " + std::to_string(i) + ": status mismatch";
      return false;
    }
    if (got.status == LpStatus::optimal) {
      ++optimal;
      if (std::abs(got.value - want.value) >
          1e-6 * std::max(1.0, std::abs(want.value))) {
        note = "problem " + std::to_string(i) + ": value " + str(got.value) +
               " vs oracle " + str(want.value);
        return false;
      }
      if (!lp_point_feasible(problem, got.x, 1e-6)) {
        note = "problem " + std::to_string(i) + ": solver point infeasible";
        return false;
      }
    } else {
      ++infeasible;
    }
  }
  note = "500 problems: " + std::to_string(optimal) + " optimal, " +
         std::to_string(infeasible) + " infeasible, all matching the oracle";
  return optimal >= 50 && infeasible >= 5;  // generator must exercise both
}

// ---------------------------------------------------------------------------
// Criterion 9: ingest conserves attributed time, cleaning is idempotent, and
// a planted teleport is removed by the speed rule.
// ---------------------------------------------------------------------------

bool crit_ingest_invariants(std::string& note) {
  SynthSpec spec;
  spec.n_vehicles = 100;
  spec.duration_s = 4 * 3600;
  spec.sample_interval_s = 60;
  spec.home_bias = 0.3;
  spec.seed = 99;
  const Grid grid = Grid::from_bounds(spec.bounds, 50.0);
  const OutlierParams params{42.0, 5, 5.0};
  TestRng rng(515);

  auto total_dwell = [](const std::vector<BlockVisit>& visits) {
    int64_t total = 0;
    for (const BlockVisit& v : visits) total += v.leave_time - v.enter_time;
    return total;
  };

  for (int v = 0; v < spec.n_vehicles; ++v) {
    // Drop random samples so inter-sample gaps vary from 60 s to several
    // multiples of it and the gap cutoff has something to cut.
    Trajectory traj{"x", {}};
    for (const TrackPoint& p : synth_vehicle_track(spec, v)) {
      if (rng.uniform() < 0.7) traj.points.push_back(p);
    }
    if (traj.points.size() < 2) continue;

    const FilterResult once = filter_outliers(traj, params);
    const FilterResult twice = filter_outliers(once.cleaned, params);
    if (twice.removed_speed != 0 || twice.removed_deviation != 0 ||
        twice.cleaned.points != once.cleaned.points) {
      note = "vehicle " + std::to_string(v) + ": cleaning is not idempotent";
      return false;
    }

    const std::vector<BlockVisit> visits = segment_dwell(once.cleaned, grid, 600);
    int64_t expected = 0;
    const std::vector<TrackPoint>& pts = once.cleaned.points;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const int64_t dt = pts[k + 1].timestamp - pts[k].timestamp;
      if (dt <= 600 && grid.locate(pts[k].lat, pts[k].lon).has_value()) expected += dt;
    }
    const int64_t dwell = total_dwell(visits);
    if (dwell != expected) {
      note = "vehicle " + std::to_string(v) + ": attributed " + std::to_string(dwell) +
             " s but kept intervals sum to " + std::to_string(expected) + " s";
      return false;
    }
    const int64_t span = pts.back().timestamp - pts.front().timestamp;
    if (dwell > span) {
      note = "vehicle " + std::to_string(v) + ": attributed more time than the span";
      return false;
    }

    const int64_t d180 = total_dwell(segment_dwell(once.cleaned, grid, 180));
    const int64_t d360 = total_dwell(segment_dwell(once.cleaned, grid, 360));
    if (d180 > d360 || d360 > dwell) {
      note = "vehicle " + std::to_string(v) + ": dwell not monotone in the gap cutoff";
      return false;
    }
  }

  // Planted teleport: a walking-speed track with one fix thrown ~50 km off.
  Trajectory walk{"w", {}};
  for (int i = 0; i < 10; ++i) {
    walk.points.push_back(
        {spec.start_timestamp + i * 60, 39.93 + i * (60.0 / Grid::kMetersPerDegLat), 116.35});
  }
  Trajectory planted = walk;
  planted.points[5].lat += 0.45;
  const FilterResult filtered = filter_outliers(planted, params);
  if (filtered.removed_speed != 1 || filtered.removed_deviation != 0) {
    note = "teleport: expected exactly one speed-rule removal, got " +
           std::to_string(filtered.removed_speed) + "/" +
           std::to_string(filtered.removed_deviation);
    return false;
  }
  if (filtered.cleaned.points.size() != walk.points.size() - 1) {
    note = "teleport: wrong number of surviving points";
    return false;
  }
  for (std::size_t i = 0; i < filtered.cleaned.points.size(); ++i) {
    const TrackPoint& want = walk.points[i < 5 ? i : i + 1];
    if (!(filtered.cleaned.points[i] == want)) {
      note = "teleport: surviving points are not the original track minus the outlier";
      return false;
    }
  }
  note = "100 trajectories conserve time and clean idempotently; teleport removed";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 10: two CLI runs with one seed produce byte-identical artifacts.
// ---------------------------------------------------------------------------

bool run_cli_pipeline(const std::string& cli, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string out = " -o \"" + dir.string() + "\" >/dev/null 2>&1";
  const char* steps[] = {
      " synth --set synth.n_vehicles=6 --set synth.duration_s=5400"
      " --set synth.home_bias=0.4",
      " ingest",
      " place -s S2 -n 12",
      " game -s S2 --set game.n_strategies=10 --set game.k=3",
      " export --source placement -s S2 --format geojson",
      " export --source traffic --format csv",
  };
  for (const char* step : steps) {
    const std::string command = "\"" + cli + "\"" + step + out;
    if (std::system(command.c_str()) != 0) return false;
  }
  return true;
}

bool crit_determinism(const std::string& cli, std::string& note) {
  const fs::path a = fs::temp_directory_path() / "camplan_accept_det_a";
  const fs::path b = fs::temp_directory_path() / "camplan_accept_det_b";
  if (!run_cli_pipeline(cli, a) || !run_cli_pipeline(cli, b)) {
    note = "a pipeline step exited non-zero";
    return false;
  }
  std::size_t files = 0;
  bool ok = true;
  for (const auto& entry : fs::directory_iterator(a)) {
    const std::string name = entry.path().filename().string();
    std::ifstream fa(entry.path(), std::ios::binary);
    std::ifstream fb(b / name, std::ios::binary);
    std::ostringstream ba, bb;
    ba << fa.rdbuf();
    bb << fb.rdbuf();
    if (!fb || ba.str() != bb.str()) {
      note = "artifact differs between runs: " + name;
      ok = false;
      break;
    }
    ++files;
  }
  fs::remove_all(a);
  fs::remove_all(b);
  if (!ok) return false;
  if (files < 8) {
    note = "only " + std::to_string(files) + " artifacts produced";
    return false;
  }
  note = std::to_string(files) + " artifacts byte-identical across reruns";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: camplan_acceptance <path-to-camplan-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"objectives are monotone with diminishing returns", crit_diminishing_returns},
      {"greedy meets the (1-1/e) bound vs exhaustive search", crit_greedy_bound},
      {"lazy greedy equals naive greedy", crit_lazy_equivalence},
      {"coverage saturation curve is concave and saturates first", crit_saturation},
      {"dwell objective concentrates hits (Gini ordering)", crit_fairness},
      {"game solver is exact on closed-form instances", crit_game_exactness},
      {"optimal mixed strategy dominates both baselines", crit_dominance},
      {"LP solver matches a vertex-enumeration oracle", crit_lp_oracle},
      {"ingest conserves time, idempotent, removes teleports", crit_ingest_invariants},
      {"pipeline artifacts are byte-identical across reruns",
       [&cli](std::string& note) { return crit_determinism(cli, note); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = c.fn(note);
    } catch (const std::exception& e) {
      note = std::string("unexpected exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %-55s %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.name, note.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "camplan/coverage.hpp"

namespace camplan {

/// The five placement objectives. All are monotone non-decreasing and
/// submodular over subsets of the placeable blocks, which is what makes the
/// greedy sweep carry its (1 - 1/e) guarantee.
///
///   S1 max_coverage  — number of (weighted) vehicles seen at least once
///   S2 max_dwell     — total (weighted) seconds vehicles spend in view
///   S3 sat_dwell     — saturating per-vehicle dwell: flat-rate term
///                      S/(T_v+1), offset so F(empty) = 0
///   S4 sat_hits      — saturating per-vehicle visit count S/(H_v+1)
///   S5 sat_blocks    — saturating per-vehicle distinct blocks S/(U_v+1)
enum class Strategy : int { S1 = 1, S2 = 2, S3 = 3, S4 = 4, S5 = 5 };

inline constexpr Strategy kAllStrategies[] = {
    Strategy::S1, Strategy::S2, Strategy::S3, Strategy::S4, Strategy::S5};

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

/// Offset making F(empty) = 0: S-1 for S3, S for S4 and S5, 0 for the
/// non-saturating S1/S2.
double phi_constant(const CoverageModel& model, Strategy s);

/// Full evaluation of the objective on block set C (treated as a set;
/// duplicates collapse). Throws std::invalid_argument if C contains a block
/// outside the model's placeable set R.
double objective_value(const CoverageModel& model, Strategy s,
                       std::span<const int64_t> c);

/// F(C + {candidate}) - F(C), computed incrementally from per-vehicle
/// statistics cached for C — never by re-evaluating F from scratch.
/// Throws std::invalid_argument if candidate is already in C or either
/// argument leaves R.
double marginal_gain(const CoverageModel& model, Strategy s,
                     std::span<const int64_t> c, int64_t candidate);

struct PlacementStep {
  int64_t block = 0;   // linear grid index
  double gain = 0.0;   // marginal objective gain of this pick
  double cumulative = 0.0;  // running sum of gains == F after this step
};

/// Result of a greedy (or exhaustive) camera placement sweep.
struct Placement {
  Strategy strategy = Strategy::S1;
  int32_t budget = 0;
  std::vector<PlacementStep> steps;

  /// Selected blocks in selection order.
  std::vector<int64_t> blocks() const;
};

/// Lazy greedy sweep: repeatedly picks the candidate with the largest
/// marginal gain, breaking ties toward the smallest linear block index,
/// stopping early when the best gain reaches zero. Uses a stale-upper-bound
/// priority queue; the output is identical to greedy_place_naive.
/// budget < 0 throws std::invalid_argument.
Placement greedy_place(const CoverageModel& model, Strategy s, int32_t budget);

/// Reference greedy that rescans every remaining candidate each step. Same
/// contract and same output as greedy_place; kept as the plain-readable
/// implementation the lazy queue is checked against.
Placement greedy_place_naive(const CoverageModel& model, Strategy s,
                             int32_t budget);

/// Exact optimum by subset enumeration, for oracle use in tests. Refuses
/// models with more than 20 placeable blocks. Ties prefer smaller subsets,
/// then lexicographically smaller block sets. Steps report per-prefix gains
/// of the winning set in ascending block order.
Placement exhaustive_place(const CoverageModel& model, Strategy s,
                           int32_t budget);

}  // namespace camplan

#include "camplan/placement.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace camplan {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::S1: return "S1";
    case Strategy::S2: return "S2";
    case Strategy::S3: return "S3";
    case Strategy::S4: return "S4";
    case Strategy::S5: return "S5";
  }
  throw std::invalid_argument("unknown strategy");
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

double phi_constant(const CoverageModel& model, Strategy s) {
  const double span = model.measurement_span();
  switch (s) {
    case Strategy::S1:
    case Strategy::S2: return 0.0;
    case Strategy::S3: return span - 1.0;
    case Strategy::S4:
    case Strategy::S5: return span;
  }
  throw std::invalid_argument("unknown strategy");
}

std::vector<int64_t> Placement::blocks() const {
  std::vector<int64_t> out;
  out.reserve(steps.size());
  for (const PlacementStep& s : steps) out.push_back(s.block);
  return out;
}

namespace {

bool in_placeable(const CoverageModel& m, int64_t block) {
  const auto& r = m.placeable_blocks();
  return std::binary_search(r.begin(), r.end(), block);
}

std::vector<int64_t> as_unique_set(const CoverageModel& m,
                                   std::span<const int64_t> c) {
  std::vector<int64_t> set(c.begin(), c.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (int64_t b : set) {
    if (!in_placeable(m, b)) {
      throw std::invalid_argument("block " + std::to_string(b) +
                                  " is not placeable (no recorded visits)");
    }
  }
  return set;
}

/// Incremental objective evaluator. Holds per-vehicle statistics of the
/// current selection so each candidate's marginal gain costs only a walk of
/// that block's inverted-index entries.
class GainEngine {
 public:
  GainEngine(const CoverageModel& model, Strategy s)
      : model_(model),
        strategy_(s),
        span_(model.measurement_span()),
        inv_v_(model.vehicle_count() > 0 ? 1.0 / model.vehicle_count() : 0.0),
        stat_(static_cast<size_t>(model.vehicle_count()), 0.0) {}

  double gain(int64_t block) const {
    double g = 0.0;
    for (const CoverageModel::Entry& e : model_.block_entries(block)) {
      const double w = model_.weight(e.vehicle);
      switch (strategy_) {
        case Strategy::S1:
          if (stat_[e.vehicle] == 0.0) g += w;
          break;
        case Strategy::S2:
          g += w * e.dwell_s;
          break;
        case Strategy::S3:
          g += saturating_delta(stat_[e.vehicle], w * e.dwell_s);
          break;
        case Strategy::S4:
          g += saturating_delta(stat_[e.vehicle], w * e.hits);
          break;
        case Strategy::S5:
          g += saturating_delta(stat_[e.vehicle], w);
          break;
      }
    }
    return g;
  }

  void commit(int64_t block) {
    for (const CoverageModel::Entry& e : model_.block_entries(block)) {
      const double w = model_.weight(e.vehicle);
      switch (strategy_) {
        case Strategy::S1: stat_[e.vehicle] = 1.0; break;
        case Strategy::S2: break;  // gain is state-free
        case Strategy::S3: stat_[e.vehicle] += w * e.dwell_s; break;
        case Strategy::S4: stat_[e.vehicle] += w * e.hits; break;
        case Strategy::S5: stat_[e.vehicle] += w; break;
      }
    }
  }

 private:
  double saturating_delta(double x, double dx) const {
    return inv_v_ * (span_ / (x + 1.0) - span_ / (x + dx + 1.0));
  }

  const CoverageModel& model_;
  Strategy strategy_;
  double span_;
  double inv_v_;
  std::vector<double> stat_;
};

Placement run_greedy(const CoverageModel& model, Strategy s, int32_t budget,
                     bool lazy) {
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  Placement result;
  result.strategy = s;
  result.budget = budget;

  const std::vector<int64_t>& candidates = model.placeable_blocks();
  if (candidates.empty() || budget == 0 || model.vehicle_count() == 0) {
    return result;
  }

  GainEngine engine(model, s);
  double cumulative = 0.0;

  if (!lazy) {
    std::vector<int64_t> remaining = candidates;
    while (static_cast<int32_t>(result.steps.size()) < budget &&
           !remaining.empty()) {
      double best_gain = -1.0;
      size_t best_pos = 0;
      for (size_t i = 0; i < remaining.size(); ++i) {
        const double g = engine.gain(remaining[i]);
        if (g > best_gain) {  // ties keep the earlier (smaller) block
          best_gain = g;
          best_pos = i;
        }
      }
      if (best_gain <= 0.0) break;
      const int64_t block = remaining[best_pos];
      engine.commit(block);
      cumulative += best_gain;
      result.steps.push_back({block, best_gain, cumulative});
      remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(best_pos));
    }
    return result;
  }

  // CELF-style queue of stale upper bounds. Submodularity keeps stored
  // gains valid upper bounds; an entry re-evaluated at the current step is
  // the true maximum. Ordering (gain desc, block asc) reproduces the naive
  // scan's tie-break exactly.
  struct QEntry {
    double gain;
    int64_t block;
    int32_t stamp;
  };
  auto worse = [](const QEntry& a, const QEntry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.block > b.block;
  };
  std::priority_queue<QEntry, std::vector<QEntry>, decltype(worse)> queue(worse);
  for (int64_t block : candidates) {
    queue.push({engine.gain(block), block, 0});
  }

  int32_t step = 0;
  while (step < budget && !queue.empty()) {
    QEntry top = queue.top();
    queue.pop();
    if (top.stamp != step) {
      top.gain = engine.gain(top.block);
      top.stamp = step;
      queue.push(top);
      continue;
    }
    if (top.gain <= 0.0) break;
    engine.commit(top.block);
    cumulative += top.gain;
    result.steps.push_back({top.block, top.gain, cumulative});
    ++step;
  }
  return result;
}

}  // namespace

double objective_value(const CoverageModel& model, Strategy s,
                       std::span<const int64_t> c) {
  const std::vector<int64_t> set = as_unique_set(model, c);
  const int32_t n_vehicles = model.vehicle_count();
  if (n_vehicles == 0) return 0.0;
  const double span = model.measurement_span();
  const double inv_v = 1.0 / n_vehicles;

  // Per-vehicle statistic aggregated over the set, then folded through the
  // strategy's per-vehicle term. The offset constant is distributed into the
  // per-vehicle terms, so a vehicle that never meets C contributes exactly
  // zero and F(empty) == 0 identically.
  std::vector<double> stat(static_cast<size_t>(n_vehicles), 0.0);
  std::vector<char> seen(static_cast<size_t>(n_vehicles), 0);
  std::vector<int32_t> touched;
  for (int64_t block : set) {
    for (const CoverageModel::Entry& e : model.block_entries(block)) {
      const double w = model.weight(e.vehicle);
      if (!seen[e.vehicle]) {
        seen[e.vehicle] = 1;
        touched.push_back(e.vehicle);
      }
      switch (s) {
        case Strategy::S1: stat[e.vehicle] = 1.0; break;
        case Strategy::S2:
        case Strategy::S3: stat[e.vehicle] += w * e.dwell_s; break;
        case Strategy::S4: stat[e.vehicle] += w * e.hits; break;
        case Strategy::S5: stat[e.vehicle] += w; break;
      }
    }
  }

  double value = 0.0;
  switch (s) {
    case Strategy::S1:
      for (int32_t v : touched) value += model.weight(v);
      break;
    case Strategy::S2:
      for (int32_t v : touched) value += stat[v];
      break;
    case Strategy::S3:
    case Strategy::S4:
    case Strategy::S5:
      for (int32_t v : touched) {
        value += inv_v * (span - span / (stat[v] + 1.0));
      }
      break;
  }
  return value;
}

double marginal_gain(const CoverageModel& model, Strategy s,
                     std::span<const int64_t> c, int64_t candidate) {
  const std::vector<int64_t> set = as_unique_set(model, c);
  if (std::binary_search(set.begin(), set.end(), candidate)) {
    throw std::invalid_argument("candidate block already selected");
  }
  if (!in_placeable(model, candidate)) {
    throw std::invalid_argument("candidate block is not placeable");
  }
  GainEngine engine(model, s);
  for (int64_t block : set) engine.commit(block);
  return engine.gain(candidate);
}

Placement greedy_place(const CoverageModel& model, Strategy s,
                       int32_t budget) {
  return run_greedy(model, s, budget, /*lazy=*/true);
}

Placement greedy_place_naive(const CoverageModel& model, Strategy s,
                             int32_t budget) {
  return run_greedy(model, s, budget, /*lazy=*/false);
}

Placement exhaustive_place(const CoverageModel& model, Strategy s,
                           int32_t budget) {
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  const std::vector<int64_t>& r = model.placeable_blocks();
  if (r.size() > 20) {
    throw std::invalid_argument(
        "exhaustive_place: instance too large (placeable blocks > 20)");
  }

  const int n = static_cast<int>(r.size());
  const int max_k = std::min<int>(n, budget);
  std::vector<int64_t> best_set;
  double best_value = 0.0;  // F(empty)

  std::vector<int64_t> combo;
  // enumerate sizes ascending, combinations lexicographically; strict
  // improvement keeps the smallest, lexicographically-first optimum
  auto recurse = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      const double value = objective_value(model, s, combo);
      if (value > best_value) {
        best_value = value;
        best_set = combo;
      }
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      combo.push_back(r[static_cast<size_t>(i)]);
      self(self, i + 1, remaining - 1);
      combo.pop_back();
    }
  };
  for (int k = 1; k <= max_k; ++k) recurse(recurse, 0, k);

  Placement result;
  result.strategy = s;
  result.budget = budget;
  GainEngine engine(model, s);
  double cumulative = 0.0;
  for (int64_t block : best_set) {
    const double gain = engine.gain(block);
    engine.commit(block);
    cumulative += gain;
    result.steps.push_back({block, gain, cumulative});
  }
  return result;
}

}  // namespace camplan

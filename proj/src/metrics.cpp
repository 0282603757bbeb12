#include "camplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camplan {

double gini(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("gini of an empty vector");
  }
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("gini requires finite non-negative values");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double total = 0.0, weighted = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    total += sorted[i];
    weighted += static_cast<double>(i + 1) * sorted[i];
  }
  if (total == 0.0) return 0.0;
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

DistStats dist_stats(std::span<const double> values) {
  DistStats s;
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(n);
  s.median = (n % 2 == 1) ? sorted[n / 2]
                          : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double ss = 0.0;
  for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(n));
  return s;
}

namespace {

struct PerVehicle {
  std::vector<double> vit;
  std::vector<int64_t> vch;
  std::vector<int64_t> vuh;
};

PerVehicle aggregate(const CoverageModel& model, std::span<const int64_t> c) {
  std::vector<int64_t> set(c.begin(), c.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());

  const size_t nv = static_cast<size_t>(model.vehicle_count());
  PerVehicle out{std::vector<double>(nv, 0.0), std::vector<int64_t>(nv, 0),
                 std::vector<int64_t>(nv, 0)};
  for (int64_t block : set) {
    for (const CoverageModel::Entry& e : model.block_entries(block)) {
      out.vit[e.vehicle] += e.dwell_s;
      out.vch[e.vehicle] += e.hits;
      out.vuh[e.vehicle] += 1;
    }
  }
  return out;
}

double total_traffic(const CoverageModel& model) {
  double total = 0.0;
  for (int64_t block : model.placeable_blocks()) {
    total += model.block_traffic(block);
  }
  return total;
}

}  // namespace

double ucr(const CoverageModel& model, std::span<const int64_t> c) {
  if (model.vehicle_count() == 0) {
    throw std::invalid_argument("ucr of an empty model");
  }
  const PerVehicle agg = aggregate(model, c);
  int64_t covered = 0;
  for (int64_t u : agg.vuh) covered += (u > 0) ? 1 : 0;
  // every modeled vehicle has at least one visit, so I_v(R) = 1 for all
  return static_cast<double>(covered) / model.vehicle_count();
}

double vcr(const CoverageModel& model, std::span<const int64_t> c) {
  if (model.vehicle_count() == 0) {
    throw std::invalid_argument("vcr of an empty model");
  }
  const double denom = total_traffic(model);
  if (!(denom > 0.0)) {
    throw std::invalid_argument("vcr undefined: model has zero total dwell");
  }
  const PerVehicle agg = aggregate(model, c);
  double num = 0.0;
  for (double t : agg.vit) num += t;
  return num / denom;
}

MetricReport compute_metrics(const CoverageModel& model,
                             std::span<const int64_t> c) {
  if (model.vehicle_count() == 0) {
    throw std::invalid_argument("metrics of an empty model");
  }
  MetricReport r;
  PerVehicle agg = aggregate(model, c);
  {
    std::vector<int64_t> set(c.begin(), c.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    r.n_cameras = static_cast<int64_t>(set.size());
  }

  int64_t covered = 0;
  double vit_sum = 0.0;
  for (size_t v = 0; v < agg.vit.size(); ++v) {
    covered += (agg.vuh[v] > 0) ? 1 : 0;
    vit_sum += agg.vit[v];
  }
  r.ucr = static_cast<double>(covered) / model.vehicle_count();
  const double denom = total_traffic(model);
  if (!(denom > 0.0)) {
    throw std::invalid_argument("vcr undefined: model has zero total dwell");
  }
  r.vcr = vit_sum / denom;

  std::vector<double> vch_d(agg.vch.begin(), agg.vch.end());
  std::vector<double> vuh_d(agg.vuh.begin(), agg.vuh.end());
  r.vit_stats = dist_stats(agg.vit);
  r.vch_stats = dist_stats(vch_d);
  r.vuh_stats = dist_stats(vuh_d);
  r.gini_vch = gini(vch_d);
  r.vit = std::move(agg.vit);
  r.vch = std::move(agg.vch);
  r.vuh = std::move(agg.vuh);
  return r;
}

}  // namespace camplan

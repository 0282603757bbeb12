#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "camplan/coverage.hpp"

namespace camplan {

/// Location/dispersion summary of one per-vehicle metric vector.
/// stddev is the population standard deviation; the median of an even
/// count is the mean of the two middle values.
struct DistStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

/// Post-placement surveillance metrics for one camera set C.
struct MetricReport {
  int64_t n_cameras = 0;
  double ucr = 0.0;  // fraction of vehicles seen at least once
  double vcr = 0.0;  // fraction of total dwell time captured
  // per-vehicle vectors in the model's vehicle order (unweighted)
  std::vector<double> vit;   // seconds in view
  std::vector<int64_t> vch;  // camera hits (visit entries)
  std::vector<int64_t> vuh;  // distinct camera blocks encountered
  DistStats vit_stats, vch_stats, vuh_stats;
  double gini_vch = 0.0;  // inequality of the hit distribution
};

/// Gini coefficient G = sum_ij |x_i - x_j| / (2 n^2 mean), computed with
/// the O(n log n) sorted form. Zero for an all-zero vector by convention.
/// Throws std::invalid_argument on an empty span or any negative value.
double gini(std::span<const double> values);

DistStats dist_stats(std::span<const double> values);

/// Unique coverage ratio: sum_v I_v(C) / sum_v I_v(R). Throws
/// std::invalid_argument on a model with no vehicles.
double ucr(const CoverageModel& model, std::span<const int64_t> c);

/// Visit coverage ratio: sum_v T_v(C) / sum_v T_v(R). Throws
/// std::invalid_argument on a model with no vehicles or zero total dwell.
double vcr(const CoverageModel& model, std::span<const int64_t> c);

/// Full report: UCR, VCR, per-vehicle VIT/VCH/VUH with summary stats, and
/// the Gini coefficient of VCH. C is treated as a set.
MetricReport compute_metrics(const CoverageModel& model,
                             std::span<const int64_t> c);

}  // namespace camplan

#include "camplan/coverage.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace camplan {

namespace {

void validate_weights(const std::map<std::string, double>& weights) {
  for (const auto& [id, w] : weights) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("vehicle weight for '" + id +
                                  "' must be positive");
    }
  }
}

}  // namespace

CoverageModel CoverageModel::build(const Grid& grid,
                                   std::span<const BlockVisit> visits,
                                   std::optional<double> span_s,
                                   const std::map<std::string, double>& weights) {
  validate_weights(weights);

  // (vehicle, block) -> (dwell, hits); std::map keeps everything sorted so
  // the result is independent of visit order.
  std::map<std::string, std::map<int64_t, std::pair<double, int32_t>>> agg;
  int64_t min_enter = 0, max_leave = 0;
  bool any = false;
  for (const BlockVisit& v : visits) {
    if (v.leave_time < v.enter_time) {
      throw std::invalid_argument("visit with negative dwell");
    }
    if (v.vehicle_id.empty()) {
      throw std::invalid_argument("visit with empty vehicle id");
    }
    const int64_t block = grid.linear_index(v.block);  // throws if outside
    auto& cell = agg[v.vehicle_id][block];
    cell.first += static_cast<double>(v.leave_time - v.enter_time);
    cell.second += 1;
    if (!any) {
      min_enter = v.enter_time;
      max_leave = v.leave_time;
      any = true;
    } else {
      min_enter = std::min(min_enter, v.enter_time);
      max_leave = std::max(max_leave, v.leave_time);
    }
  }

  CoverageModel m;
  m.grid_ = grid;
  m.vehicles_.reserve(agg.size());
  m.per_vehicle_.reserve(agg.size());
  double max_vehicle_dwell = 0.0;
  for (auto& [id, row] : agg) {
    m.vehicles_.push_back(id);
    std::vector<VehicleStat> stats;
    stats.reserve(row.size());
    double total = 0.0;
    for (const auto& [block, cell] : row) {
      stats.push_back({block, cell.first, cell.second});
      total += cell.first;
    }
    max_vehicle_dwell = std::max(max_vehicle_dwell, total);
    m.per_vehicle_.push_back(std::move(stats));
  }

  if (span_s.has_value()) {
    if (!(*span_s > 0.0)) {
      throw std::invalid_argument("measurement span must be positive");
    }
    if (*span_s < max_vehicle_dwell) {
      throw std::invalid_argument(
          "measurement span is smaller than a vehicle's total dwell");
    }
    m.span_ = *span_s;
  } else {
    m.span_ = any ? std::max(1.0, static_cast<double>(max_leave - min_enter))
                  : 1.0;
  }

  m.weights_.assign(m.vehicles_.size(), 1.0);
  for (size_t v = 0; v < m.vehicles_.size(); ++v) {
    auto it = weights.find(m.vehicles_[v]);
    if (it != weights.end()) m.weights_[v] = it->second;
  }

  m.rebuild_inverted_index();
  return m;
}

CoverageModel CoverageModel::with_weights(
    const std::map<std::string, double>& weights) const {
  validate_weights(weights);
  CoverageModel m = *this;
  m.weights_.assign(m.vehicles_.size(), 1.0);
  for (size_t v = 0; v < m.vehicles_.size(); ++v) {
    auto it = weights.find(m.vehicles_[v]);
    if (it != weights.end()) m.weights_[v] = it->second;
  }
  return m;
}

void CoverageModel::rebuild_inverted_index() {
  std::map<int64_t, std::vector<Entry>> inv;
  for (size_t v = 0; v < per_vehicle_.size(); ++v) {
    for (const VehicleStat& s : per_vehicle_[v]) {
      inv[s.block].push_back(
          {static_cast<int32_t>(v), s.dwell_s, s.hits});
    }
  }
  blocks_.clear();
  block_offsets_.clear();
  entries_.clear();
  block_offsets_.push_back(0);
  for (auto& [block, list] : inv) {
    blocks_.push_back(block);
    entries_.insert(entries_.end(), list.begin(), list.end());
    block_offsets_.push_back(entries_.size());
  }
}

int32_t CoverageModel::vehicle_index(std::string_view id) const {
  auto it = std::lower_bound(vehicles_.begin(), vehicles_.end(), id);
  if (it == vehicles_.end() || *it != id) {
    throw std::out_of_range("unknown vehicle id '" + std::string(id) + "'");
  }
  return static_cast<int32_t>(it - vehicles_.begin());
}

std::span<const CoverageModel::Entry> CoverageModel::block_entries(
    int64_t linear_block) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), linear_block);
  if (it == blocks_.end() || *it != linear_block) return {};
  const size_t i = static_cast<size_t>(it - blocks_.begin());
  return {entries_.data() + block_offsets_[i],
          block_offsets_[i + 1] - block_offsets_[i]};
}

const CoverageModel::VehicleStat* CoverageModel::find_pair(
    int32_t v, int64_t block) const {
  const auto& row = per_vehicle_.at(static_cast<size_t>(v));
  auto it = std::lower_bound(row.begin(), row.end(), block,
                             [](const VehicleStat& s, int64_t b) {
                               return s.block < b;
                             });
  if (it == row.end() || it->block != block) return nullptr;
  return &*it;
}

namespace {
// Visits each distinct block of c exactly once.
template <typename Fn>
void for_each_unique(std::span<const int64_t> c, Fn&& fn) {
  std::vector<int64_t> sorted(c.begin(), c.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int64_t b : sorted) fn(b);
}
}  // namespace

int CoverageModel::covered_idx(int32_t v, std::span<const int64_t> c) const {
  for (int64_t b : c) {
    if (find_pair(v, b) != nullptr) return 1;
  }
  return 0;
}

double CoverageModel::dwell_time_idx(int32_t v,
                                     std::span<const int64_t> c) const {
  double total = 0.0;
  for_each_unique(c, [&](int64_t b) {
    if (const VehicleStat* s = find_pair(v, b)) total += s->dwell_s;
  });
  return total;
}

int64_t CoverageModel::hit_count_idx(int32_t v,
                                     std::span<const int64_t> c) const {
  int64_t total = 0;
  for_each_unique(c, [&](int64_t b) {
    if (const VehicleStat* s = find_pair(v, b)) total += s->hits;
  });
  return total;
}

int64_t CoverageModel::unique_hits_idx(int32_t v,
                                       std::span<const int64_t> c) const {
  int64_t total = 0;
  for_each_unique(c, [&](int64_t b) {
    if (find_pair(v, b) != nullptr) ++total;
  });
  return total;
}

int CoverageModel::covered(std::string_view id,
                           std::span<const int64_t> c) const {
  return covered_idx(vehicle_index(id), c);
}
double CoverageModel::dwell_time(std::string_view id,
                                 std::span<const int64_t> c) const {
  return dwell_time_idx(vehicle_index(id), c);
}
int64_t CoverageModel::hit_count(std::string_view id,
                                 std::span<const int64_t> c) const {
  return hit_count_idx(vehicle_index(id), c);
}
int64_t CoverageModel::unique_hits(std::string_view id,
                                   std::span<const int64_t> c) const {
  return unique_hits_idx(vehicle_index(id), c);
}

std::pair<double, int32_t> CoverageModel::pair_stats(int32_t v,
                                                     int64_t block) const {
  if (const VehicleStat* s = find_pair(v, block)) {
    return {s->dwell_s, s->hits};
  }
  return {0.0, 0};
}

double CoverageModel::block_traffic(int64_t block) const {
  double total = 0.0;
  for (const Entry& e : block_entries(block)) total += e.dwell_s;
  return total;
}

void CoverageModel::dump_csv(std::ostream& out) const {
  out << "vehicle_id,block_row,block_col,dwell_s,hits\n";
  char buf[64];
  for (size_t v = 0; v < per_vehicle_.size(); ++v) {
    for (const VehicleStat& s : per_vehicle_[v]) {
      const BlockId id = grid_.from_linear(s.block);
      std::snprintf(buf, sizeof buf, ",%d,%d,%.17g,%d\n", id.row, id.col,
                    s.dwell_s, s.hits);
      out << vehicles_[v] << buf;
    }
  }
}

}  // namespace camplan

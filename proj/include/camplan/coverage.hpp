#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camplan/geo_grid.hpp"
#include "camplan/trajectory.hpp"

namespace camplan {

/// Aggregated surveillance statistics: who spent how long, and how many
/// separate visits, in which block. This is the substrate every placement
/// strategy and metric works from.
///
/// Vehicles are indexed densely in lexicographic id order; blocks are
/// row-major linear grid indices. Both directions are queryable: per-vehicle
/// sorted block lists and a per-block inverted index of visiting vehicles.
/// Construction is deterministic regardless of visit order.
class CoverageModel {
 public:
  /// One inverted-index cell: vehicle `vehicle` accumulated `dwell_s`
  /// seconds over `hits` distinct visits in the owning block.
  struct Entry {
    int32_t vehicle = 0;
    double dwell_s = 0.0;
    int32_t hits = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Aggregates visits into a model.
  ///
  /// span_s: measurement horizon S used by the saturating objectives. When
  /// omitted it defaults to the dataset time span (max leave - min enter),
  /// floored at 1 s. An explicit value must be positive and at least the
  /// largest per-vehicle total dwell.
  ///
  /// weights: optional per-vehicle importance multipliers, default 1.0.
  /// Non-positive weights are rejected; ids absent from the visits are
  /// ignored.
  ///
  /// Throws std::invalid_argument on violated preconditions and
  /// std::out_of_range for visits in blocks outside the grid.
  static CoverageModel build(const Grid& grid,
                             std::span<const BlockVisit> visits,
                             std::optional<double> span_s = std::nullopt,
                             const std::map<std::string, double>& weights = {});

  /// Copy of this model with replaced vehicle weights (same validation as
  /// build).
  CoverageModel with_weights(const std::map<std::string, double>& weights) const;

  const Grid& grid() const { return grid_; }
  double measurement_span() const { return span_; }
  int32_t vehicle_count() const { return static_cast<int32_t>(vehicles_.size()); }
  const std::vector<std::string>& vehicle_ids() const { return vehicles_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int32_t v) const { return weights_.at(static_cast<size_t>(v)); }

  /// Dense index of a vehicle id; throws std::out_of_range if unknown.
  int32_t vehicle_index(std::string_view id) const;

  /// R: sorted linear indices of all blocks with at least one visit.
  const std::vector<int64_t>& placeable_blocks() const { return blocks_; }

  /// Inverted index for one block (entries sorted by vehicle); empty span
  /// for blocks nobody visited.
  std::span<const Entry> block_entries(int64_t linear_block) const;

  /// Per-vehicle statistics over a candidate set C of linear block indices.
  /// C is treated as a set (duplicates ignored); blocks outside R simply
  /// contribute nothing. The id overloads throw std::out_of_range for
  /// unknown vehicles.
  int covered(std::string_view id, std::span<const int64_t> c) const;
  double dwell_time(std::string_view id, std::span<const int64_t> c) const;
  int64_t hit_count(std::string_view id, std::span<const int64_t> c) const;
  int64_t unique_hits(std::string_view id, std::span<const int64_t> c) const;
  int covered_idx(int32_t v, std::span<const int64_t> c) const;
  double dwell_time_idx(int32_t v, std::span<const int64_t> c) const;
  int64_t hit_count_idx(int32_t v, std::span<const int64_t> c) const;
  int64_t unique_hits_idx(int32_t v, std::span<const int64_t> c) const;

  /// (dwell, hits) of one (vehicle, block) pair, or (0, 0) if absent.
  std::pair<double, int32_t> pair_stats(int32_t v, int64_t block) const;

  /// Total dwell time all vehicles spent in one block (unweighted).
  double block_traffic(int64_t block) const;

  /// Debug dump: "vehicle_id,block_row,block_col,dwell_s,hits" rows sorted
  /// by (vehicle, block), with a header.
  void dump_csv(std::ostream& out) const;

  friend bool operator==(const CoverageModel&, const CoverageModel&) = default;

 private:
  friend class ModelCodec;  // binary persistence (io.cpp)

  Grid grid_;
  double span_ = 1.0;
  std::vector<std::string> vehicles_;  // sorted ids
  std::vector<double> weights_;
  // per-vehicle rows sorted by block
  struct VehicleStat {
    int64_t block;
    double dwell_s;
    int32_t hits;
    friend bool operator==(const VehicleStat&, const VehicleStat&) = default;
  };
  std::vector<std::vector<VehicleStat>> per_vehicle_;
  // per-block inverted index, CSR over blocks_
  std::vector<int64_t> blocks_;        // R, sorted
  std::vector<size_t> block_offsets_;  // size |R| + 1
  std::vector<Entry> entries_;

  void rebuild_inverted_index();
  const VehicleStat* find_pair(int32_t v, int64_t block) const;
};

}  // namespace camplan

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace camplan {

/// Row/column address of one grid block. Rows grow northward (increasing
/// latitude), columns eastward (increasing longitude).
struct BlockId {
  int32_t row = 0;
  int32_t col = 0;

  friend bool operator==(const BlockId&, const BlockId&) = default;
};

/// Geographic bounding box in decimal degrees, min-inclusive.
struct LatLonBounds {
  double min_lat = 0.0;
  double max_lat = 0.0;
  double min_lon = 0.0;
  double max_lon = 0.0;

  friend bool operator==(const LatLonBounds&, const LatLonBounds&) = default;
};

/// Uniform square grid laid over a lat/lon rectangle.
///
/// Distances use the equirectangular approximation with the cosine scale
/// frozen at the rectangle's mid-latitude: one degree of latitude is
/// kMetersPerDegLat meters, one degree of longitude is
/// kMetersPerDegLat * cos(mid_lat) meters. Cells are half-open
/// [low, high) in both axes; points exactly on the max edge of the
/// rectangle clamp into the last row/column, so the blocks tile the
/// rectangle exactly with no overlap.
class Grid {
 public:
  static constexpr double kMetersPerDegLat = 111320.0;

  /// Builds a grid from a bounding rectangle and a block edge length in
  /// meters. Row/column counts are ceil(extent_m / cell_size_m), so the
  /// final row/column may be fractional-width (their outer bounds are
  /// clamped to the rectangle).
  ///
  /// Throws std::invalid_argument for inverted/empty bounds, a
  /// non-positive or non-finite cell size, latitudes outside [-90, 90],
  /// or a block count that cannot be indexed in 63 bits.
  static Grid from_bounds(const LatLonBounds& bounds, double cell_size_m);

  int32_t n_rows() const { return n_rows_; }
  int32_t n_cols() const { return n_cols_; }
  int64_t block_count() const { return int64_t{n_rows_} * n_cols_; }
  const LatLonBounds& bounds() const { return bounds_; }
  double cell_size_m() const { return cell_size_m_; }
  double meters_per_deg_lat() const { return kMetersPerDegLat; }
  double meters_per_deg_lon() const { return m_per_deg_lon_; }

  /// Maps a point to its containing block, or nullopt if the point lies
  /// outside the rectangle. Points on a max edge clamp to the last
  /// row/column; all other cell edges are half-open.
  std::optional<BlockId> locate(double lat, double lon) const;

  /// Row-major linear index: row * n_cols + col.
  /// Throws std::out_of_range for ids outside the grid.
  int64_t linear_index(BlockId id) const;

  /// Inverse of linear_index. Throws std::out_of_range.
  BlockId from_linear(int64_t index) const;

  /// [lat_lo, lat_hi) x [lon_lo, lon_hi) extent of a block, with the last
  /// row/column clamped to the rectangle. Throws std::out_of_range.
  struct BlockBounds {
    double lat_lo, lat_hi, lon_lo, lon_hi;
  };
  BlockBounds block_bounds(BlockId id) const;

  /// Center of the (possibly clamped) block rectangle.
  void block_center(BlockId id, double& lat, double& lon) const;

  /// Block area in m^2 under the grid's equirectangular metric.
  double block_area_m2(BlockId id) const;

  /// Straight-line distance between two points in the grid's metric.
  double distance_m(double lat1, double lon1, double lat2, double lon2) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  LatLonBounds bounds_;
  double cell_size_m_ = 0.0;
  double m_per_deg_lon_ = 0.0;
  double dlat_deg_ = 0.0;  // cell height in degrees latitude
  double dlon_deg_ = 0.0;  // cell width in degrees longitude
  int32_t n_rows_ = 0;
  int32_t n_cols_ = 0;
};

}  // namespace camplan

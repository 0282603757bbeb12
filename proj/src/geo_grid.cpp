#include "camplan/geo_grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace camplan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Grid Grid::from_bounds(const LatLonBounds& b, double cell_size_m) {
  if (!(std::isfinite(b.min_lat) && std::isfinite(b.max_lat) &&
        std::isfinite(b.min_lon) && std::isfinite(b.max_lon))) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (b.min_lat < -90.0 || b.max_lat > 90.0) {
    throw std::invalid_argument("latitudes must lie in [-90, 90]");
  }
  if (!(b.min_lat < b.max_lat) || !(b.min_lon < b.max_lon)) {
    throw std::invalid_argument("grid bounds are empty or inverted");
  }
  if (!(cell_size_m > 0.0) || !std::isfinite(cell_size_m)) {
    throw std::invalid_argument("cell size must be positive and finite");
  }

  Grid g;
  g.bounds_ = b;
  g.cell_size_m_ = cell_size_m;
  const double mid_lat = 0.5 * (b.min_lat + b.max_lat);
  g.m_per_deg_lon_ = kMetersPerDegLat * std::cos(mid_lat * kPi / 180.0);
  if (!(g.m_per_deg_lon_ > 0.0)) {
    // mid-latitude at a pole: east-west extent degenerates
    throw std::invalid_argument("grid mid-latitude too close to a pole");
  }

  const double height_m = (b.max_lat - b.min_lat) * kMetersPerDegLat;
  const double width_m = (b.max_lon - b.min_lon) * g.m_per_deg_lon_;
  const double rows_d = std::ceil(height_m / cell_size_m);
  const double cols_d = std::ceil(width_m / cell_size_m);
  constexpr double kMaxSide = 2147483647.0;  // per-axis cap, fits int32
  if (rows_d > kMaxSide || cols_d > kMaxSide || rows_d * cols_d > 9.0e18) {
    throw std::invalid_argument("grid block count overflows the index type");
  }
  g.n_rows_ = static_cast<int32_t>(rows_d);
  g.n_cols_ = static_cast<int32_t>(cols_d);
  g.dlat_deg_ = cell_size_m / kMetersPerDegLat;
  g.dlon_deg_ = cell_size_m / g.m_per_deg_lon_;
  return g;
}

std::optional<BlockId> Grid::locate(double lat, double lon) const {
  if (!(lat >= bounds_.min_lat) || !(lat <= bounds_.max_lat) ||
      !(lon >= bounds_.min_lon) || !(lon <= bounds_.max_lon)) {
    return std::nullopt;  // outside, or NaN
  }
  auto clamp_cell = [](double offset_deg, double cell_deg, int32_t n) {
    int64_t i = static_cast<int64_t>(std::floor(offset_deg / cell_deg));
    if (i < 0) i = 0;            // guards fp jitter at the min edge
    if (i >= n) i = n - 1;       // max edge clamps into the last cell
    return static_cast<int32_t>(i);
  };
  BlockId id;
  id.row = clamp_cell(lat - bounds_.min_lat, dlat_deg_, n_rows_);
  id.col = clamp_cell(lon - bounds_.min_lon, dlon_deg_, n_cols_);
  return id;
}

int64_t Grid::linear_index(BlockId id) const {
  if (id.row < 0 || id.row >= n_rows_ || id.col < 0 || id.col >= n_cols_) {
    throw std::out_of_range("block id outside grid");
  }
  return int64_t{id.row} * n_cols_ + id.col;
}

BlockId Grid::from_linear(int64_t index) const {
  if (index < 0 || index >= block_count()) {
    throw std::out_of_range("linear block index outside grid");
  }
  return BlockId{static_cast<int32_t>(index / n_cols_),
                 static_cast<int32_t>(index % n_cols_)};
}

Grid::BlockBounds Grid::block_bounds(BlockId id) const {
  (void)linear_index(id);  // bounds check
  BlockBounds bb;
  bb.lat_lo = bounds_.min_lat + id.row * dlat_deg_;
  bb.lon_lo = bounds_.min_lon + id.col * dlon_deg_;
  bb.lat_hi = (id.row + 1 == n_rows_)
                  ? bounds_.max_lat
                  : std::min(bounds_.min_lat + (id.row + 1) * dlat_deg_,
                             bounds_.max_lat);
  bb.lon_hi = (id.col + 1 == n_cols_)
                  ? bounds_.max_lon
                  : std::min(bounds_.min_lon + (id.col + 1) * dlon_deg_,
                             bounds_.max_lon);
  if (bb.lat_hi < bb.lat_lo) bb.lat_hi = bb.lat_lo;
  if (bb.lon_hi < bb.lon_lo) bb.lon_hi = bb.lon_lo;
  return bb;
}

void Grid::block_center(BlockId id, double& lat, double& lon) const {
  const BlockBounds bb = block_bounds(id);
  lat = 0.5 * (bb.lat_lo + bb.lat_hi);
  lon = 0.5 * (bb.lon_lo + bb.lon_hi);
}

double Grid::block_area_m2(BlockId id) const {
  const BlockBounds bb = block_bounds(id);
  return (bb.lat_hi - bb.lat_lo) * kMetersPerDegLat *
         (bb.lon_hi - bb.lon_lo) * m_per_deg_lon_;
}

double Grid::distance_m(double lat1, double lon1, double lat2,
                        double lon2) const {
  const double dy = (lat2 - lat1) * kMetersPerDegLat;
  const double dx = (lon2 - lon1) * m_per_deg_lon_;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace camplan

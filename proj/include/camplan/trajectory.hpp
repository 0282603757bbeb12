#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "camplan/geo_grid.hpp"

namespace camplan {

/// One GPS fix. Timestamps are UTC seconds since the Unix epoch.
struct TrackPoint {
  int64_t timestamp = 0;
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

/// A raw CSV row: a fix tagged with the vehicle that produced it.
struct GpsRecord {
  std::string vehicle_id;
  TrackPoint point;
};

/// All fixes of one vehicle, sorted by strictly increasing timestamp.
struct Trajectory {
  std::string vehicle_id;
  std::vector<TrackPoint> points;
};

/// Counters describing one parse pass.
struct ParseReport {
  int64_t lines = 0;       // non-empty data lines seen
  int64_t records = 0;     // rows kept after dedup
  int64_t malformed = 0;   // rows dropped as unparseable
  int64_t duplicates = 0;  // rows dropped for a repeated (vehicle, timestamp)
  int64_t vehicles = 0;

  /// Single-line summary suitable for logging.
  std::string log_line() const;
};

enum class CsvFormat {
  /// Header "vehicle_id,timestamp,latitude,longitude"; timestamp is either
  /// integer epoch seconds or "YYYY-MM-DD HH:MM:SS" (UTC).
  standard,
  /// Headerless rows "id,YYYY-MM-DD HH:MM:SS,longitude,latitude".
  tdrive,
};

struct ParseResult {
  std::vector<Trajectory> trajectories;  // sorted by vehicle_id
  ParseReport report;
};

/// Reads a trajectory CSV. Malformed rows are counted and skipped; rows with
/// out-of-range coordinates count as malformed. Exact duplicates and rows
/// that repeat a (vehicle, timestamp) already seen are dropped and counted.
/// Throws DataError if the stream is unreadable, the standard header is
/// missing/mismatched, or more than half of the data lines are malformed.
ParseResult parse_records(std::istream& in, CsvFormat format = CsvFormat::standard);

/// Groups loose records into per-vehicle trajectories: stable-sorts by
/// timestamp, drops repeated (vehicle, timestamp) rows (counted as
/// duplicates), orders trajectories by vehicle id.
ParseResult build_trajectories(std::vector<GpsRecord> records);

/// Knobs for filter_outliers. window_size must be odd and >= 3; the other
/// two must be positive.
struct OutlierParams {
  double max_speed_mps = 42.0;
  int window_size = 5;
  double deviation_factor = 5.0;
};

struct FilterResult {
  Trajectory cleaned;
  int64_t removed_speed = 0;      // implied-speed rule
  int64_t removed_deviation = 0;  // window-deviation rule
};

/// Removes GPS glitches in one deterministic pass over time order. A point
/// is dropped when (a) the straight-line speed from the previous kept point
/// exceeds max_speed_mps, or otherwise (b) it lies farther from the centroid
/// of its surrounding window (up to window_size/2 input neighbors each side,
/// the point itself excluded) than deviation_factor times the window's
/// median point-to-centroid distance. Rule (b) only fires when the window
/// has at least 3 points. The first point is always kept. Each removed
/// point is counted under exactly one rule, (a) taking precedence.
FilterResult filter_outliers(const Trajectory& traj, const OutlierParams& params = {});

/// A maximal run of consecutive sampling intervals a vehicle spent in one
/// block: [enter_time, leave_time], dwell = leave_time - enter_time > 0.
struct BlockVisit {
  std::string vehicle_id;
  BlockId block;
  int64_t enter_time = 0;
  int64_t leave_time = 0;
};

/// Attributes each inter-sample interval [t_k, t_k+1] to the block holding
/// sample k, merging consecutive intervals in the same block into one visit.
/// Intervals longer than max_gap_s and intervals starting outside the grid
/// are dropped (and break the current run). A trailing sample contributes no
/// interval. Throws std::invalid_argument if max_gap_s <= 0 or the
/// trajectory's timestamps are not strictly increasing.
std::vector<BlockVisit> segment_dwell(const Trajectory& traj, const Grid& grid,
                                      int64_t max_gap_s = 600);

}  // namespace camplan

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "camplan/geo_grid.hpp"
#include "camplan/synth.hpp"
#include "camplan/trajectory.hpp"

namespace camplan {

/// Every knob of the pipeline with its documented default. A config file is
/// flat `key = value` text (one pair per line, `#` comments); the same keys
/// are accepted as command-line overrides, which win over the file.
///
/// Keys:
///   grid.lat_lo / grid.lat_hi / grid.lon_lo / grid.lon_hi  rectangle
///   grid.cell_size_m                                       block edge
///   ingest.max_speed_mps      speed-rule threshold
///   ingest.window_size        deviation-rule neighbourhood half-width basis
///   ingest.deviation_factor   deviation-rule multiplier
///   ingest.max_gap_s          dwell attribution gap cutoff
///   ingest.tdrive             1 = T-Drive column order (id,datetime,lon,lat)
///   place.strategy            S1..S5
///   place.n_cameras           greedy budget
///   place.weights_path        optional per-vehicle weights CSV (id,weight)
///   game.n_strategies         J, defender pure strategies to generate
///   game.k                    upgraded cameras per pure strategy
///   game.seed                 pure-strategy generation seed
///   game.payoff_mode          only "zero_sum" is defined
///   synth.n_vehicles / synth.duration_s / synth.sample_interval_s
///   synth.speed_min_mps / synth.speed_max_mps
///   synth.home_bias / synth.home_sigma_m / synth.start_timestamp
///   io.input_csv              trajectory CSV consumed by `ingest`
///   io.output_dir             directory all artifacts are written under
///   seed                      master seed (synth substreams derive from it)
struct RunConfig {
  double lat_lo = 39.90;
  double lat_hi = 39.99;
  double lon_lo = 116.30;
  double lon_hi = 116.42;
  double cell_size_m = 50.0;

  double max_speed_mps = 42.0;
  int window_size = 5;
  double deviation_factor = 5.0;
  int64_t max_gap_s = 600;
  bool tdrive = false;

  std::string strategy = "S1";
  int n_cameras = 100;
  std::string weights_path;

  int game_n_strategies = 100;
  int game_k = 10;
  uint64_t game_seed = 42;
  std::string payoff_mode = "zero_sum";

  int synth_n_vehicles = 10;
  int64_t synth_duration_s = 86400;
  int64_t synth_sample_interval_s = 60;
  double synth_speed_min_mps = 5.0;
  double synth_speed_max_mps = 15.0;
  double synth_home_bias = 0.0;
  double synth_home_sigma_m = 500.0;
  int64_t synth_start_timestamp = 1201900800;

  std::string input_csv;
  std::string output_dir = ".";
  uint64_t seed = 42;

  /// Throws DataError on out-of-range values or an unknown strategy name.
  void validate() const;

  LatLonBounds bounds() const { return {lat_lo, lat_hi, lon_lo, lon_hi}; }
  Grid make_grid() const;
  OutlierParams outlier_params() const;
  SynthSpec synth_spec() const;
};

/// Applies one `key`/`value` pair; throws DataError for unknown keys or
/// unparseable values.
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Parses a whole config stream / file. Missing file throws DataError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace camplan

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camplan/geo_grid.hpp"
#include "camplan/trajectory.hpp"

namespace camplan {

/// Parameters of the synthetic trajectory generator. Vehicles follow a
/// random-waypoint model inside the rectangle: pick a waypoint, drive toward
/// it in a straight line at a per-leg speed drawn uniformly from
/// [speed_min_mps, speed_max_mps], repeat, and report a GPS sample every
/// sample_interval_s. With home_bias > 0 each vehicle also gets a fixed home
/// point and draws that fraction of its waypoints from a home_sigma_m-sized
/// neighbourhood around it, which concentrates traffic the way real fleets
/// do; home_bias = 0 is the plain uniform-waypoint model.
///
/// Everything is a pure function of (spec, vehicle index): each vehicle uses
/// its own counter-derived random substream, so tracks can be generated
/// independently, in any order, or one at a time without changing a single
/// sample.
struct SynthSpec {
  LatLonBounds bounds{39.90, 39.99, 116.30, 116.42};
  int n_vehicles = 10;
  int64_t duration_s = 86400;
  int64_t sample_interval_s = 60;
  double speed_min_mps = 5.0;
  double speed_max_mps = 15.0;
  double home_bias = 0.0;
  double home_sigma_m = 500.0;
  int64_t start_timestamp = 1201900800;  // 2008-02-02 00:00:00 UTC
  uint64_t seed = 42;

  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;

  /// Number of samples each vehicle emits: floor(duration / interval).
  int64_t samples_per_vehicle() const { return duration_s / sample_interval_s; }

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

/// Zero-padded id of vehicle v ("v0001", ...); width grows with n_vehicles
/// so lexicographic order always equals numeric order.
std::string synth_vehicle_id(const SynthSpec& spec, int vehicle);

/// The full sample sequence of one vehicle, timestamps strictly increasing
/// from start_timestamp in sample_interval_s steps.
std::vector<TrackPoint> synth_vehicle_track(const SynthSpec& spec, int vehicle);

/// All vehicles' samples concatenated in vehicle order.
std::vector<GpsRecord> synth_records(const SynthSpec& spec);

}  // namespace camplan

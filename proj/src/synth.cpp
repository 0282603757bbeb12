#include "camplan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace camplan {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMetersPerDegLat = 111320.0;

uint64_t splitmix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Substream seed for one vehicle: a counter-mode splitmix output, so any
// vehicle's stream is addressable in O(1).
uint64_t substream_seed(uint64_t master, uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void SynthSpec::validate() const {
  if (!(bounds.min_lat < bounds.max_lat) || !(bounds.min_lon < bounds.max_lon)) {
    throw std::invalid_argument("synth: degenerate bounds rectangle");
  }
  if (!(bounds.min_lat >= -90.0 && bounds.max_lat <= 90.0 && bounds.min_lon >= -180.0 &&
        bounds.max_lon <= 180.0)) {
    throw std::invalid_argument("synth: bounds outside lat/lon range");
  }
  if (n_vehicles < 1) throw std::invalid_argument("synth: n_vehicles must be positive");
  if (sample_interval_s < 1) throw std::invalid_argument("synth: sample interval must be >= 1s");
  if (duration_s < sample_interval_s) {
    throw std::invalid_argument("synth: duration shorter than one sample interval");
  }
  if (!(speed_min_mps > 0.0) || !(speed_max_mps >= speed_min_mps) ||
      !std::isfinite(speed_max_mps)) {
    throw std::invalid_argument("synth: speeds must satisfy 0 < min <= max");
  }
  if (!(home_bias >= 0.0 && home_bias <= 1.0)) {
    throw std::invalid_argument("synth: home_bias must lie in [0, 1]");
  }
  if (!(home_sigma_m > 0.0) || !std::isfinite(home_sigma_m)) {
    throw std::invalid_argument("synth: home_sigma_m must be positive");
  }
}

std::string synth_vehicle_id(const SynthSpec& spec, int vehicle) {
  if (vehicle < 0 || vehicle >= spec.n_vehicles) {
    throw std::invalid_argument("synth: vehicle index out of range");
  }
  int width = 4;
  for (int64_t scale = 10000; scale <= spec.n_vehicles; scale *= 10) ++width;
  // n_vehicles is an int, so width can never exceed 10 digits.
  width = std::min(width, 12);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "v%0*d", width, vehicle + 1);
  return buf;
}

std::vector<TrackPoint> synth_vehicle_track(const SynthSpec& spec, int vehicle) {
  spec.validate();
  if (vehicle < 0 || vehicle >= spec.n_vehicles) {
    throw std::invalid_argument("synth: vehicle index out of range");
  }
  std::mt19937_64 rng(substream_seed(spec.seed, static_cast<uint64_t>(vehicle)));

  // Flat local frame in meters anchored at the rectangle's south-west
  // corner, with the longitude scale taken at the mid latitude.
  const double mid_lat = 0.5 * (spec.bounds.min_lat + spec.bounds.max_lat);
  const double m_per_deg_lon = kMetersPerDegLat * std::cos(mid_lat * kPi / 180.0);
  const double width_m = (spec.bounds.max_lon - spec.bounds.min_lon) * m_per_deg_lon;
  const double height_m = (spec.bounds.max_lat - spec.bounds.min_lat) * kMetersPerDegLat;

  const double home_x = uniform01(rng) * width_m;
  const double home_y = uniform01(rng) * height_m;
  double x = home_x;
  double y = home_y;

  auto pick_waypoint = [&](double& wx, double& wy) {
    if (uniform01(rng) < spec.home_bias) {
      wx = home_x + spec.home_sigma_m * (2.0 * uniform01(rng) - 1.0);
      wy = home_y + spec.home_sigma_m * (2.0 * uniform01(rng) - 1.0);
      wx = std::clamp(wx, 0.0, width_m);
      wy = std::clamp(wy, 0.0, height_m);
    } else {
      wx = uniform01(rng) * width_m;
      wy = uniform01(rng) * height_m;
    }
  };
  auto pick_speed = [&]() {
    return spec.speed_min_mps + (spec.speed_max_mps - spec.speed_min_mps) * uniform01(rng);
  };

  double wx, wy;
  pick_waypoint(wx, wy);
  double speed = pick_speed();

  const int64_t n_samples = spec.samples_per_vehicle();
  std::vector<TrackPoint> track;
  track.reserve(static_cast<std::size_t>(n_samples));
  for (int64_t s = 0; s < n_samples; ++s) {
    track.push_back({spec.start_timestamp + s * spec.sample_interval_s,
                     spec.bounds.min_lat + y / kMetersPerDegLat,
                     spec.bounds.min_lon + x / m_per_deg_lon});
    double remaining = static_cast<double>(spec.sample_interval_s);
    while (remaining > 0.0) {
      const double dx = wx - x;
      const double dy = wy - y;
      const double dist = std::hypot(dx, dy);
      if (dist <= speed * remaining) {
        x = wx;
        y = wy;
        remaining -= dist / speed;
        const double px = wx, py = wy;
        pick_waypoint(wx, wy);
        speed = pick_speed();
        // A clamped waypoint can coincide with the current position; stand
        // still for the rest of this interval rather than spinning.
        if (wx == px && wy == py) break;
      } else {
        const double f = speed * remaining / dist;
        x += dx * f;
        y += dy * f;
        remaining = 0.0;
      }
    }
  }
  return track;
}

std::vector<GpsRecord> synth_records(const SynthSpec& spec) {
  spec.validate();
  std::vector<GpsRecord> records;
  records.reserve(static_cast<std::size_t>(spec.n_vehicles) *
                  static_cast<std::size_t>(spec.samples_per_vehicle()));
  for (int v = 0; v < spec.n_vehicles; ++v) {
    const std::string id = synth_vehicle_id(spec, v);
    for (const TrackPoint& p : synth_vehicle_track(spec, v)) {
      records.push_back({id, p});
    }
  }
  return records;
}

}  // namespace camplan

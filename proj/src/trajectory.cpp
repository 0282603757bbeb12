#include "camplan/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <istream>
#include <map>
#include <stdexcept>

#include "camplan/errors.hpp"

namespace camplan {

std::string ParseReport::log_line() const {
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "ingest_parse lines=%lld records=%lld malformed=%lld "
                "duplicates=%lld vehicles=%lld",
                static_cast<long long>(lines), static_cast<long long>(records),
                static_cast<long long>(malformed),
                static_cast<long long>(duplicates),
                static_cast<long long>(vehicles));
  return buf;
}

namespace {

// Splits on ',' into at most `max_fields + 1` pieces; returns the count or
// -1 when the line has the wrong arity.
int split_csv(const std::string& line, std::string* out, int expected) {
  int n = 0;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (n >= expected) return -1;
    out[n++] = line.substr(start, pos == std::string::npos ? pos : pos - start);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return n == expected ? n : -1;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

// Integer epoch seconds or "YYYY-MM-DD HH:MM:SS" (UTC).
bool parse_timestamp(const std::string& s, int64_t& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() + s.size()) {
    out = v;
    return true;
  }
  int y, mo, d, h, mi, sec;
  char trail;
  if (std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d%c", &y, &mo, &d, &h, &mi, &sec,
                  &trail) != 6) {
    return false;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec > 60) {
    return false;
  }
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = sec;
  const time_t t = timegm(&tm);
  if (t == static_cast<time_t>(-1)) return false;
  out = static_cast<int64_t>(t);
  return true;
}

bool coords_in_range(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kMetersPerDegLat = 111320.0;

// Local flat-earth distance, longitude scaled at the first point's latitude.
double point_distance_m(const TrackPoint& a, const TrackPoint& b) {
  const double m_per_deg_lon = kMetersPerDegLat * std::cos(a.lat * kPi / 180.0);
  const double dy = (b.lat - a.lat) * kMetersPerDegLat;
  const double dx = (b.lon - a.lon) * m_per_deg_lon;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

ParseResult build_trajectories(std::vector<GpsRecord> records) {
  ParseResult result;
  std::map<std::string, std::vector<TrackPoint>> by_vehicle;
  for (auto& rec : records) {
    by_vehicle[rec.vehicle_id].push_back(rec.point);
  }
  records.clear();
  records.shrink_to_fit();

  for (auto& [id, pts] : by_vehicle) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const TrackPoint& a, const TrackPoint& b) {
                       return a.timestamp < b.timestamp;
                     });
    Trajectory traj;
    traj.vehicle_id = id;
    traj.points.reserve(pts.size());
    for (const TrackPoint& p : pts) {
      if (!traj.points.empty() && traj.points.back().timestamp == p.timestamp) {
        ++result.report.duplicates;
        continue;
      }
      traj.points.push_back(p);
    }
    result.report.records += static_cast<int64_t>(traj.points.size());
    result.trajectories.push_back(std::move(traj));
  }
  result.report.vehicles = static_cast<int64_t>(result.trajectories.size());
  return result;
}

ParseResult parse_records(std::istream& in, CsvFormat format) {
  std::string line;
  if (format == CsvFormat::standard) {
    if (!std::getline(in, line)) {
      throw DataError("trajectory csv: cannot read header line");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "vehicle_id,timestamp,latitude,longitude") {
      throw DataError("trajectory csv: unexpected header '" + line + "'");
    }
  }

  std::vector<GpsRecord> records;
  int64_t lines = 0, malformed = 0;
  std::string fields[4];
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++lines;
    GpsRecord rec;
    bool ok = split_csv(line, fields, 4) == 4;
    if (ok) {
      rec.vehicle_id = fields[0];
      double lat = 0.0, lon = 0.0;
      const int lat_field = format == CsvFormat::standard ? 2 : 3;
      const int lon_field = format == CsvFormat::standard ? 3 : 2;
      ok = !rec.vehicle_id.empty() &&
           parse_timestamp(fields[1], rec.point.timestamp) &&
           parse_double(fields[lat_field], lat) &&
           parse_double(fields[lon_field], lon) && coords_in_range(lat, lon);
      rec.point.lat = lat;
      rec.point.lon = lon;
    }
    if (!ok) {
      ++malformed;
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw DataError("trajectory csv: stream read failure");
  if (malformed * 2 > lines) {
    throw DataError("trajectory csv: " + std::to_string(malformed) + " of " +
                    std::to_string(lines) +
                    " lines malformed; refusing to ingest");
  }

  ParseResult result = build_trajectories(std::move(records));
  result.report.lines = lines;
  result.report.malformed = malformed;
  return result;
}

FilterResult filter_outliers(const Trajectory& traj,
                             const OutlierParams& params) {
  if (!(params.max_speed_mps > 0.0) || !(params.deviation_factor > 0.0)) {
    throw std::invalid_argument("outlier thresholds must be positive");
  }
  if (params.window_size < 3 || params.window_size % 2 == 0) {
    throw std::invalid_argument("window_size must be odd and >= 3");
  }

  FilterResult result;
  result.cleaned.vehicle_id = traj.vehicle_id;
  const auto& pts = traj.points;
  const int64_t n = static_cast<int64_t>(pts.size());
  if (n == 0) return result;

  result.cleaned.points.push_back(pts[0]);
  const int64_t half = params.window_size / 2;

  for (int64_t k = 1; k < n; ++k) {
    const TrackPoint& prev = result.cleaned.points.back();
    const TrackPoint& cur = pts[k];
    const double dt = static_cast<double>(cur.timestamp - prev.timestamp);
    if (point_distance_m(prev, cur) > params.max_speed_mps * dt) {
      ++result.removed_speed;
      continue;
    }

    const int64_t lo = std::max<int64_t>(0, k - half);
    const int64_t hi = std::min<int64_t>(n - 1, k + half);
    const int64_t win = hi - lo;  // excludes k itself
    if (win >= 3) {
      double clat = 0.0, clon = 0.0;
      for (int64_t i = lo; i <= hi; ++i) {
        if (i == k) continue;
        clat += pts[i].lat;
        clon += pts[i].lon;
      }
      TrackPoint centroid{0, clat / static_cast<double>(win),
                          clon / static_cast<double>(win)};
      std::vector<double> dists;
      dists.reserve(static_cast<size_t>(win));
      for (int64_t i = lo; i <= hi; ++i) {
        if (i == k) continue;
        dists.push_back(point_distance_m(centroid, pts[i]));
      }
      std::sort(dists.begin(), dists.end());
      const size_t m = dists.size();
      const double median = (m % 2 == 1)
                                ? dists[m / 2]
                                : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
      if (point_distance_m(centroid, cur) >
          params.deviation_factor * median) {
        ++result.removed_deviation;
        continue;
      }
    }
    result.cleaned.points.push_back(cur);
  }
  return result;
}

std::vector<BlockVisit> segment_dwell(const Trajectory& traj, const Grid& grid,
                                      int64_t max_gap_s) {
  if (max_gap_s <= 0) {
    throw std::invalid_argument("max_gap_s must be positive");
  }
  for (size_t i = 1; i < traj.points.size(); ++i) {
    if (traj.points[i].timestamp <= traj.points[i - 1].timestamp) {
      throw std::invalid_argument(
          "trajectory timestamps must be strictly increasing");
    }
  }

  std::vector<BlockVisit> visits;
  bool run_open = false;
  BlockVisit run;
  auto flush = [&] {
    if (run_open) visits.push_back(run);
    run_open = false;
  };

  for (size_t k = 0; k + 1 < traj.points.size(); ++k) {
    const TrackPoint& a = traj.points[k];
    const TrackPoint& b = traj.points[k + 1];
    if (b.timestamp - a.timestamp > max_gap_s) {
      flush();
      continue;
    }
    const auto blk = grid.locate(a.lat, a.lon);
    if (!blk.has_value()) {
      flush();
      continue;
    }
    if (run_open && run.block == *blk) {
      run.leave_time = b.timestamp;
    } else {
      flush();
      run.vehicle_id = traj.vehicle_id;
      run.block = *blk;
      run.enter_time = a.timestamp;
      run.leave_time = b.timestamp;
      run_open = true;
    }
  }
  flush();
  return visits;
}

}  // namespace camplan

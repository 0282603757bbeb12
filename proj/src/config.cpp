#include "camplan/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <string>

#include "camplan/errors.hpp"
#include "camplan/placement.hpp"

namespace camplan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw DataError("config: bad numeric value for " + key + ": '" + value + "'");
  }
  return v;
}

int64_t parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw DataError("config: bad integer value for " + key + ": '" + value + "'");
  }
  return v;
}

uint64_t parse_uint(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || value.find('-') == 0) {
    throw DataError("config: bad unsigned value for " + key + ": '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw DataError("config: bad boolean value for " + key + ": '" + value + "'");
}

}  // namespace

void apply_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"grid.lat_lo", [](RunConfig& r, const std::string& k, const std::string& v) { r.lat_lo = parse_double(k, v); }},
      {"grid.lat_hi", [](RunConfig& r, const std::string& k, const std::string& v) { r.lat_hi = parse_double(k, v); }},
      {"grid.lon_lo", [](RunConfig& r, const std::string& k, const std::string& v) { r.lon_lo = parse_double(k, v); }},
      {"grid.lon_hi", [](RunConfig& r, const std::string& k, const std::string& v) { r.lon_hi = parse_double(k, v); }},
      {"grid.cell_size_m", [](RunConfig& r, const std::string& k, const std::string& v) { r.cell_size_m = parse_double(k, v); }},
      {"ingest.max_speed_mps", [](RunConfig& r, const std::string& k, const std::string& v) { r.max_speed_mps = parse_double(k, v); }},
      {"ingest.window_size", [](RunConfig& r, const std::string& k, const std::string& v) { r.window_size = static_cast<int>(parse_int(k, v)); }},
      {"ingest.deviation_factor", [](RunConfig& r, const std::string& k, const std::string& v) { r.deviation_factor = parse_double(k, v); }},
      {"ingest.max_gap_s", [](RunConfig& r, const std::string& k, const std::string& v) { r.max_gap_s = parse_int(k, v); }},
      {"ingest.tdrive", [](RunConfig& r, const std::string& k, const std::string& v) { r.tdrive = parse_bool(k, v); }},
      {"place.strategy", [](RunConfig& r, const std::string&, const std::string& v) { r.strategy = v; }},
      {"place.n_cameras", [](RunConfig& r, const std::string& k, const std::string& v) { r.n_cameras = static_cast<int>(parse_int(k, v)); }},
      {"place.weights_path", [](RunConfig& r, const std::string&, const std::string& v) { r.weights_path = v; }},
      {"game.n_strategies", [](RunConfig& r, const std::string& k, const std::string& v) { r.game_n_strategies = static_cast<int>(parse_int(k, v)); }},
      {"game.k", [](RunConfig& r, const std::string& k, const std::string& v) { r.game_k = static_cast<int>(parse_int(k, v)); }},
      {"game.seed", [](RunConfig& r, const std::string& k, const std::string& v) { r.game_seed = parse_uint(k, v); }},
      {"game.payoff_mode", [](RunConfig& r, const std::string&, const std::string& v) { r.payoff_mode = v; }},
      {"synth.n_vehicles", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_n_vehicles = static_cast<int>(parse_int(k, v)); }},
      {"synth.duration_s", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_duration_s = parse_int(k, v); }},
      {"synth.sample_interval_s", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_sample_interval_s = parse_int(k, v); }},
      {"synth.speed_min_mps", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_speed_min_mps = parse_double(k, v); }},
      {"synth.speed_max_mps", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_speed_max_mps = parse_double(k, v); }},
      {"synth.home_bias", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_home_bias = parse_double(k, v); }},
      {"synth.home_sigma_m", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_home_sigma_m = parse_double(k, v); }},
      {"synth.start_timestamp", [](RunConfig& r, const std::string& k, const std::string& v) { r.synth_start_timestamp = parse_int(k, v); }},
      {"io.input_csv", [](RunConfig& r, const std::string&, const std::string& v) { r.input_csv = v; }},
      {"io.output_dir", [](RunConfig& r, const std::string&, const std::string& v) { r.output_dir = v; }},
      {"seed", [](RunConfig& r, const std::string& k, const std::string& v) { r.seed = parse_uint(k, v); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw DataError("config: unknown key '" + key + "'");
  it->second(c, key, value);
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DataError("config: line " + std::to_string(lineno) + " is not key = value");
    }
    apply_config_value(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  if (in.bad()) throw DataError("config: stream read failure");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("config: cannot open '" + path + "'");
  return parse_config(in);
}

void RunConfig::validate() const {
  try {
    (void)make_grid();
    (void)outlier_params();  // constructor-less struct; checked below
    synth_spec().validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  if (!(max_speed_mps > 0.0) || !(deviation_factor > 0.0) || max_gap_s < 1) {
    throw DataError("config: ingest thresholds must be positive");
  }
  if (window_size < 3 || window_size % 2 == 0) {
    throw DataError("config: ingest.window_size must be odd and >= 3");
  }
  if (!strategy_from_name(strategy)) {
    throw DataError("config: unknown strategy '" + strategy + "'");
  }
  if (n_cameras < 1) throw DataError("config: place.n_cameras must be >= 1");
  if (game_n_strategies < 1 || game_k < 1) {
    throw DataError("config: game sizes must be >= 1");
  }
  if (payoff_mode != "zero_sum") {
    throw DataError("config: unsupported payoff mode '" + payoff_mode + "'");
  }
  if (output_dir.empty()) throw DataError("config: io.output_dir must not be empty");
}

Grid RunConfig::make_grid() const { return Grid::from_bounds(bounds(), cell_size_m); }

OutlierParams RunConfig::outlier_params() const {
  OutlierParams p;
  p.max_speed_mps = max_speed_mps;
  p.window_size = window_size;
  p.deviation_factor = deviation_factor;
  return p;
}

SynthSpec RunConfig::synth_spec() const {
  SynthSpec s;
  s.bounds = bounds();
  s.n_vehicles = synth_n_vehicles;
  s.duration_s = synth_duration_s;
  s.sample_interval_s = synth_sample_interval_s;
  s.speed_min_mps = synth_speed_min_mps;
  s.speed_max_mps = synth_speed_max_mps;
  s.home_bias = synth_home_bias;
  s.home_sigma_m = synth_home_sigma_m;
  s.start_timestamp = synth_start_timestamp;
  s.seed = seed;
  return s;
}

}  // namespace camplan

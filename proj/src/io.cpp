#include "camplan/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "camplan/errors.hpp"

namespace camplan {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void bad(const std::string& what) { throw DataError(what); }

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) bad("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) bad("cannot open '" + path + "' for writing");
  return out;
}

void flush_check(std::ostream& out, const char* what) {
  out.flush();
  if (!out) bad(std::string("write failure while emitting ") + what);
}

// ---- text token helpers ----------------------------------------------------

void expect_word(std::istream& in, const char* want, const char* ctx) {
  std::string got;
  if (!(in >> got) || got != want) {
    bad(std::string(ctx) + ": expected '" + want + "'" +
        (got.empty() ? "" : ", got '" + got + "'"));
  }
}

template <typename T>
T read_value(std::istream& in, const char* ctx) {
  T v{};
  if (!(in >> v)) bad(std::string(ctx) + ": malformed or truncated value");
  return v;
}

// ---- binary helpers ---------------------------------------------------------

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* ctx) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) bad(std::string(ctx) + ": truncated input");
  return v;
}

constexpr char kModelMagic[8] = {'C', 'A', 'M', 'P', 'L', 'A', 'N', 'M'};
constexpr char kModelTrailer[8] = {'E', 'N', 'D', 'M', 'O', 'D', 'E', 'L'};
constexpr uint32_t kModelVersion = 1;

}  // namespace

// Persistence backdoor declared as a friend by CoverageModel.
class ModelCodec {
 public:
  static void save(const CoverageModel& m, std::ostream& out) {
    out.write(kModelMagic, sizeof(kModelMagic));
    put(out, kModelVersion);
    const LatLonBounds& b = m.grid_.bounds();
    put(out, b.min_lat);
    put(out, b.max_lat);
    put(out, b.min_lon);
    put(out, b.max_lon);
    put(out, m.grid_.cell_size_m());
    put(out, m.span_);
    put(out, static_cast<uint64_t>(m.vehicles_.size()));
    for (std::size_t v = 0; v < m.vehicles_.size(); ++v) {
      const std::string& id = m.vehicles_[v];
      put(out, static_cast<uint32_t>(id.size()));
      out.write(id.data(), static_cast<std::streamsize>(id.size()));
      put(out, m.weights_[v]);
      const auto& stats = m.per_vehicle_[v];
      put(out, static_cast<uint64_t>(stats.size()));
      for (const auto& s : stats) {
        put(out, s.block);
        put(out, s.dwell_s);
        put(out, s.hits);
      }
    }
    out.write(kModelTrailer, sizeof(kModelTrailer));
    flush_check(out, "model");
  }

  static CoverageModel load(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
      bad("model: bad magic header");
    }
    const uint32_t version = get<uint32_t>(in, "model");
    if (version != kModelVersion) {
      bad("model: unsupported version " + std::to_string(version));
    }
    LatLonBounds b;
    b.min_lat = get<double>(in, "model");
    b.max_lat = get<double>(in, "model");
    b.min_lon = get<double>(in, "model");
    b.max_lon = get<double>(in, "model");
    const double cell = get<double>(in, "model");
    const double span = get<double>(in, "model");

    CoverageModel m;
    try {
      m.grid_ = Grid::from_bounds(b, cell);
    } catch (const std::invalid_argument& e) {
      bad(std::string("model: invalid grid: ") + e.what());
    }
    if (!(span > 0.0) || !std::isfinite(span)) bad("model: invalid span");
    m.span_ = span;

    const uint64_t n_vehicles = get<uint64_t>(in, "model");
    if (n_vehicles > (1ull << 31)) bad("model: implausible vehicle count");
    m.vehicles_.reserve(n_vehicles);
    m.weights_.reserve(n_vehicles);
    m.per_vehicle_.reserve(n_vehicles);
    for (uint64_t v = 0; v < n_vehicles; ++v) {
      const uint32_t len = get<uint32_t>(in, "model");
      if (len == 0 || len > 4096) bad("model: implausible vehicle id length");
      std::string id(len, '\0');
      in.read(id.data(), len);
      if (!in) bad("model: truncated vehicle id");
      if (!m.vehicles_.empty() && !(m.vehicles_.back() < id)) {
        bad("model: vehicle ids out of order");
      }
      const double w = get<double>(in, "model");
      if (!(w > 0.0) || !std::isfinite(w)) bad("model: non-positive weight");
      const uint64_t n_stats = get<uint64_t>(in, "model");
      if (n_stats > (1ull << 40)) bad("model: implausible stat count");
      std::vector<CoverageModel::VehicleStat> stats;
      stats.reserve(n_stats);
      int64_t prev_block = -1;
      for (uint64_t s = 0; s < n_stats; ++s) {
        CoverageModel::VehicleStat st{};
        st.block = get<int64_t>(in, "model");
        st.dwell_s = get<double>(in, "model");
        st.hits = get<int32_t>(in, "model");
        if (st.block <= prev_block) bad("model: blocks out of order");
        if (st.block >= m.grid_.block_count()) bad("model: block outside grid");
        if (!(st.dwell_s >= 0.0) || !std::isfinite(st.dwell_s)) {
          bad("model: negative dwell");
        }
        if (st.hits < 1) bad("model: hit count below 1");
        prev_block = st.block;
        stats.push_back(st);
      }
      m.vehicles_.push_back(std::move(id));
      m.weights_.push_back(w);
      m.per_vehicle_.push_back(std::move(stats));
    }
    char trailer[8];
    in.read(trailer, sizeof(trailer));
    if (!in || std::memcmp(trailer, kModelTrailer, sizeof(trailer)) != 0) {
      bad("model: missing trailer (truncated file?)");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
      bad("model: trailing bytes after trailer");
    }
    m.rebuild_inverted_index();
    return m;
  }
};

// ---- trajectory CSV ----------------------------------------------------------

void write_records_csv_header(std::ostream& out) {
  out << "vehicle_id,timestamp,latitude,longitude\n";
}

void append_record_csv(std::ostream& out, const GpsRecord& r) {
  out << r.vehicle_id << ',' << r.point.timestamp << ',' << fmt(r.point.lat) << ','
      << fmt(r.point.lon) << '\n';
}

void write_records_csv(std::ostream& out, std::span<const GpsRecord> records) {
  write_records_csv_header(out);
  for (const GpsRecord& r : records) append_record_csv(out, r);
  flush_check(out, "trajectory csv");
}

// ---- weights -------------------------------------------------------------------

std::map<std::string, double> load_weights(std::istream& in) {
  std::map<std::string, double> weights;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      bad("weights: line " + std::to_string(lineno) + " is not id,weight");
    }
    const std::string id = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    errno = 0;
    char* end = nullptr;
    const double w = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE || !(w > 0.0) ||
        !std::isfinite(w)) {
      bad("weights: bad weight on line " + std::to_string(lineno));
    }
    if (!weights.emplace(id, w).second) {
      bad("weights: duplicate vehicle '" + id + "'");
    }
  }
  if (in.bad()) bad("weights: stream read failure");
  return weights;
}

std::map<std::string, double> load_weights_file(const std::string& path) {
  auto in = open_in(path);
  return load_weights(in);
}

// ---- model files -----------------------------------------------------------------

void save_model(const CoverageModel& model, std::ostream& out) {
  ModelCodec::save(model, out);
}

void save_model_file(const CoverageModel& model, const std::string& path) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  ModelCodec::save(model, out);
}

CoverageModel load_model(std::istream& in) { return ModelCodec::load(in); }

CoverageModel load_model_file(const std::string& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  return ModelCodec::load(in);
}

// ---- placement text ------------------------------------------------------------

void save_placement(const Placement& placement, const Grid& grid, std::ostream& out) {
  const LatLonBounds& b = grid.bounds();
  out << "camplan-placement v1\n";
  out << "strategy " << strategy_name(placement.strategy) << '\n';
  out << "budget " << placement.budget << '\n';
  out << "grid " << fmt(b.min_lat) << ' ' << fmt(b.max_lat) << ' ' << fmt(b.min_lon) << ' '
      << fmt(b.max_lon) << ' ' << fmt(grid.cell_size_m()) << '\n';
  out << "steps " << placement.steps.size() << '\n';
  for (std::size_t i = 0; i < placement.steps.size(); ++i) {
    const PlacementStep& s = placement.steps[i];
    const BlockId id = grid.from_linear(s.block);
    out << (i + 1) << ' ' << id.row << ' ' << id.col << ' ' << fmt(s.gain) << ' '
        << fmt(s.cumulative) << '\n';
  }
  flush_check(out, "placement");
}

void save_placement_file(const Placement& placement, const Grid& grid,
                         const std::string& path) {
  auto out = open_out(path);
  save_placement(placement, grid, out);
}

Placement load_placement(std::istream& in, Grid* grid_out) {
  expect_word(in, "camplan-placement", "placement");
  expect_word(in, "v1", "placement");
  expect_word(in, "strategy", "placement");
  const std::string name = read_value<std::string>(in, "placement");
  const auto strategy = strategy_from_name(name);
  if (!strategy) bad("placement: unknown strategy '" + name + "'");
  expect_word(in, "budget", "placement");
  const int32_t budget = read_value<int32_t>(in, "placement");
  if (budget < 0) bad("placement: negative budget");
  expect_word(in, "grid", "placement");
  LatLonBounds b;
  b.min_lat = read_value<double>(in, "placement");
  b.max_lat = read_value<double>(in, "placement");
  b.min_lon = read_value<double>(in, "placement");
  b.max_lon = read_value<double>(in, "placement");
  const double cell = read_value<double>(in, "placement");
  Grid grid;
  try {
    grid = Grid::from_bounds(b, cell);
  } catch (const std::invalid_argument& e) {
    bad(std::string("placement: invalid grid: ") + e.what());
  }
  expect_word(in, "steps", "placement");
  const int64_t n = read_value<int64_t>(in, "placement");
  if (n < 0 || n > budget) bad("placement: step count out of range");

  Placement p;
  p.strategy = *strategy;
  p.budget = budget;
  double prev_cumulative = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t rank = read_value<int64_t>(in, "placement");
    if (rank != i + 1) bad("placement: step ranks must be sequential");
    const int32_t row = read_value<int32_t>(in, "placement");
    const int32_t col = read_value<int32_t>(in, "placement");
    PlacementStep s;
    try {
      s.block = grid.linear_index({row, col});
    } catch (const std::out_of_range&) {
      bad("placement: step block outside grid");
    }
    s.gain = read_value<double>(in, "placement");
    s.cumulative = read_value<double>(in, "placement");
    if (!std::isfinite(s.gain) || !std::isfinite(s.cumulative)) {
      bad("placement: non-finite step values");
    }
    if (std::abs(s.cumulative - (prev_cumulative + s.gain)) >
        1e-6 * std::max(1.0, std::abs(s.cumulative))) {
      bad("placement: cumulative column inconsistent with gains");
    }
    prev_cumulative = s.cumulative;
    p.steps.push_back(s);
  }
  std::string tail;
  if (in >> tail) bad("placement: trailing garbage '" + tail + "'");
  if (grid_out) *grid_out = grid;
  return p;
}

Placement load_placement_file(const std::string& path, Grid* grid_out) {
  auto in = open_in(path);
  return load_placement(in, grid_out);
}

// ---- game instance text -----------------------------------------------------

void save_game(const GameInstance& game, std::ostream& out) {
  out << "camplan-game v1\n";
  out << "targets " << game.n_targets << '\n';
  out << "strategies " << game.strategies.size() << '\n';
  out << "blocks " << (game.target_blocks.empty() ? 0 : 1) << '\n';
  for (int i = 0; i < game.n_targets; ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    out << "target " << i;
    if (!game.target_blocks.empty()) out << ' ' << game.target_blocks[ii];
    out << ' ' << fmt(game.payoffs.reward_defender[ii]) << ' '
        << fmt(game.payoffs.penalty_defender[ii]) << ' '
        << fmt(game.payoffs.reward_adversary[ii]) << ' '
        << fmt(game.payoffs.penalty_adversary[ii]) << '\n';
  }
  for (std::size_t j = 0; j < game.strategies.size(); ++j) {
    out << "strategy " << j << ' ' << game.strategies[j].size();
    for (int t : game.strategies[j]) out << ' ' << t;
    out << '\n';
  }
  flush_check(out, "game instance");
}

void save_game_file(const GameInstance& game, const std::string& path) {
  auto out = open_out(path);
  save_game(game, out);
}

GameInstance load_game(std::istream& in) {
  expect_word(in, "camplan-game", "game");
  expect_word(in, "v1", "game");
  GameInstance g;
  expect_word(in, "targets", "game");
  g.n_targets = read_value<int>(in, "game");
  if (g.n_targets < 1 || g.n_targets > (1 << 24)) bad("game: implausible target count");
  expect_word(in, "strategies", "game");
  const int64_t jn = read_value<int64_t>(in, "game");
  if (jn < 1 || jn > (1 << 24)) bad("game: implausible strategy count");
  expect_word(in, "blocks", "game");
  const int has_blocks = read_value<int>(in, "game");
  if (has_blocks != 0 && has_blocks != 1) bad("game: blocks flag must be 0 or 1");

  const std::size_t n = static_cast<std::size_t>(g.n_targets);
  g.payoffs.reward_defender.resize(n);
  g.payoffs.penalty_defender.resize(n);
  g.payoffs.reward_adversary.resize(n);
  g.payoffs.penalty_adversary.resize(n);
  if (has_blocks) g.target_blocks.resize(n);
  for (int i = 0; i < g.n_targets; ++i) {
    expect_word(in, "target", "game");
    const int idx = read_value<int>(in, "game");
    if (idx != i) bad("game: target lines must be sequential");
    const std::size_t ii = static_cast<std::size_t>(i);
    if (has_blocks) g.target_blocks[ii] = read_value<int64_t>(in, "game");
    g.payoffs.reward_defender[ii] = read_value<double>(in, "game");
    g.payoffs.penalty_defender[ii] = read_value<double>(in, "game");
    g.payoffs.reward_adversary[ii] = read_value<double>(in, "game");
    g.payoffs.penalty_adversary[ii] = read_value<double>(in, "game");
  }
  g.strategies.resize(static_cast<std::size_t>(jn));
  for (int64_t j = 0; j < jn; ++j) {
    expect_word(in, "strategy", "game");
    const int64_t idx = read_value<int64_t>(in, "game");
    if (idx != j) bad("game: strategy lines must be sequential");
    const int64_t size = read_value<int64_t>(in, "game");
    if (size < 0 || size > g.n_targets) bad("game: strategy size out of range");
    auto& row = g.strategies[static_cast<std::size_t>(j)];
    row.reserve(static_cast<std::size_t>(size));
    for (int64_t s = 0; s < size; ++s) row.push_back(read_value<int>(in, "game"));
  }
  std::string tail;
  if (in >> tail) bad("game: trailing garbage '" + tail + "'");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    bad(std::string("game: invalid instance: ") + e.what());
  }
  return g;
}

GameInstance load_game_file(const std::string& path) {
  auto in = open_in(path);
  return load_game(in);
}

// ---- reports ---------------------------------------------------------------

void write_ingest_report(std::ostream& out, const IngestReport& r) {
  out << "camplan-ingest v1\n";
  out << "lines " << r.parse.lines << '\n';
  out << "records " << r.parse.records << '\n';
  out << "malformed " << r.parse.malformed << '\n';
  out << "duplicates " << r.parse.duplicates << '\n';
  out << "vehicles " << r.parse.vehicles << '\n';
  out << "removed_speed " << r.removed_speed << '\n';
  out << "removed_deviation " << r.removed_deviation << '\n';
  out << "visits " << r.visits << '\n';
  out << "placeable_blocks " << r.placeable_blocks << '\n';
  out << "span_s " << fmt(r.span_s) << '\n';
  flush_check(out, "ingest report");
}

void write_metrics_report(std::ostream& out, const MetricReport& r) {
  out << "camplan-metrics v1\n";
  out << "n_cameras " << r.n_cameras << '\n';
  out << "ucr " << fmt(r.ucr) << '\n';
  out << "vcr " << fmt(r.vcr) << '\n';
  out << "vit mean " << fmt(r.vit_stats.mean) << " median " << fmt(r.vit_stats.median)
      << " stddev " << fmt(r.vit_stats.stddev) << '\n';
  out << "vch mean " << fmt(r.vch_stats.mean) << " median " << fmt(r.vch_stats.median)
      << " stddev " << fmt(r.vch_stats.stddev) << '\n';
  out << "vuh mean " << fmt(r.vuh_stats.mean) << " median " << fmt(r.vuh_stats.median)
      << " stddev " << fmt(r.vuh_stats.stddev) << '\n';
  out << "gini_vch " << fmt(r.gini_vch) << '\n';
  flush_check(out, "metrics report");
}

void write_per_vehicle_csv(std::ostream& out, const CoverageModel& model,
                           const MetricReport& r) {
  const auto& ids = model.vehicle_ids();
  if (r.vit.size() != ids.size() || r.vch.size() != ids.size() ||
      r.vuh.size() != ids.size()) {
    throw std::invalid_argument("per-vehicle csv: report does not match model");
  }
  out << "vehicle_id,vit_s,vch,vuh\n";
  for (std::size_t v = 0; v < ids.size(); ++v) {
    out << ids[v] << ',' << fmt(r.vit[v]) << ',' << r.vch[v] << ',' << r.vuh[v] << '\n';
  }
  flush_check(out, "per-vehicle csv");
}

void write_game_report(std::ostream& out, const GameInstance& game, const GameSolution& sol,
                       const DefenderEval& uniform_eval, const DefenderEval& best_pure_eval) {
  out << "camplan-game-solution v1\n";
  out << "targets " << game.n_targets << '\n';
  out << "strategies " << game.strategies.size() << '\n';
  out << "attacked_target " << sol.attacked_target << '\n';
  out << "defender_utility " << fmt(sol.defender_utility) << '\n';
  out << "adversary_utility " << fmt(sol.adversary_utility) << '\n';
  for (std::size_t i = 0; i < sol.mixed.marginals.size(); ++i) {
    out << "x " << i << ' ' << fmt(sol.mixed.marginals[i]) << '\n';
  }
  for (std::size_t j = 0; j < sol.mixed.probs.size(); ++j) {
    if (sol.mixed.probs[j] > 0.0) {
      out << "a " << j << ' ' << fmt(sol.mixed.probs[j]) << '\n';
    }
  }
  out << "baseline uniform " << fmt(uniform_eval.defender_utility) << ' '
      << fmt(uniform_eval.adversary_utility) << ' ' << uniform_eval.attacked_target << '\n';
  out << "baseline best_pure " << fmt(best_pure_eval.defender_utility) << ' '
      << fmt(best_pure_eval.adversary_utility) << ' ' << best_pure_eval.attacked_target
      << '\n';
  flush_check(out, "game report");
}

// ---- heatmaps -----------------------------------------------------------------

void write_heatmap_csv(std::ostream& out, const Grid& grid, std::span<const HeatCell> cells) {
  out << "row,col,center_lat,center_lon,value\n";
  for (const HeatCell& c : cells) {
    double lat = 0.0, lon = 0.0;
    grid.block_center(c.block, lat, lon);
    out << c.block.row << ',' << c.block.col << ',' << fmt(lat) << ',' << fmt(lon) << ','
        << fmt(c.value) << '\n';
  }
  flush_check(out, "heatmap csv");
}

void write_heatmap_geojson(std::ostream& out, const Grid& grid,
                           std::span<const HeatCell> cells) {
  nlohmann::json features = nlohmann::json::array();
  for (const HeatCell& c : cells) {
    const Grid::BlockBounds b = grid.block_bounds(c.block);
    nlohmann::json ring = nlohmann::json::array();
    ring.push_back({b.lon_lo, b.lat_lo});
    ring.push_back({b.lon_hi, b.lat_lo});
    ring.push_back({b.lon_hi, b.lat_hi});
    ring.push_back({b.lon_lo, b.lat_hi});
    ring.push_back({b.lon_lo, b.lat_lo});
    nlohmann::json feature{
        {"type", "Feature"},
        {"geometry", {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}}},
        {"properties", {{"row", c.block.row}, {"col", c.block.col}, {"value", c.value}}},
    };
    features.push_back(std::move(feature));
  }
  const nlohmann::json doc{{"type", "FeatureCollection"}, {"features", std::move(features)}};
  out << doc.dump(2) << '\n';
  flush_check(out, "heatmap geojson");
}

}  // namespace camplan

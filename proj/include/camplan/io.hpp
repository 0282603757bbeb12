#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "camplan/coverage.hpp"
#include "camplan/game.hpp"
#include "camplan/metrics.hpp"
#include "camplan/placement.hpp"
#include "camplan/trajectory.hpp"

namespace camplan {

/// All loaders throw DataError on unreadable, truncated, or structurally
/// invalid input. All writers emit byte-deterministic output: iteration
/// orders are fixed and floating-point values are printed with %.17g, which
/// round-trips doubles exactly.

// --- trajectory CSV ------------------------------------------------------
/// Standard-format CSV: header plus one row per record, in input order.
/// The header/append pair allows streaming a large file without
/// materialising all records first.
void write_records_csv(std::ostream& out, std::span<const GpsRecord> records);
void write_records_csv_header(std::ostream& out);
void append_record_csv(std::ostream& out, const GpsRecord& record);

// --- per-vehicle weights -------------------------------------------------
/// Lines "vehicle_id,weight"; '#' comments and blank lines ignored.
std::map<std::string, double> load_weights(std::istream& in);
std::map<std::string, double> load_weights_file(const std::string& path);

// --- coverage model, versioned binary ------------------------------------
void save_model(const CoverageModel& model, std::ostream& out);
void save_model_file(const CoverageModel& model, const std::string& path);
CoverageModel load_model(std::istream& in);
CoverageModel load_model_file(const std::string& path);

// --- placement, structured text ------------------------------------------
void save_placement(const Placement& placement, const Grid& grid, std::ostream& out);
void save_placement_file(const Placement& placement, const Grid& grid,
                         const std::string& path);
/// Returns the placement; if grid_out is non-null it receives the grid the
/// file was written against.
Placement load_placement(std::istream& in, Grid* grid_out = nullptr);
Placement load_placement_file(const std::string& path, Grid* grid_out = nullptr);

// --- game instance, structured text ---------------------------------------
void save_game(const GameInstance& game, std::ostream& out);
void save_game_file(const GameInstance& game, const std::string& path);
GameInstance load_game(std::istream& in);
GameInstance load_game_file(const std::string& path);

// --- reports ---------------------------------------------------------------
struct IngestReport {
  ParseReport parse;
  int64_t removed_speed = 0;
  int64_t removed_deviation = 0;
  int64_t visits = 0;
  int64_t placeable_blocks = 0;
  double span_s = 0.0;
};
void write_ingest_report(std::ostream& out, const IngestReport& report);

void write_metrics_report(std::ostream& out, const MetricReport& report);
/// "vehicle_id,vit_s,vch,vuh" rows in the model's (sorted) vehicle order.
void write_per_vehicle_csv(std::ostream& out, const CoverageModel& model,
                           const MetricReport& report);

/// Solution report: sparse a, dense x, attacked target, utilities, and both
/// baselines, each line self-describing.
void write_game_report(std::ostream& out, const GameInstance& game, const GameSolution& sol,
                       const DefenderEval& uniform_eval, const DefenderEval& best_pure_eval);

// --- heatmaps ---------------------------------------------------------------
struct HeatCell {
  BlockId block;
  double value = 0.0;
};
/// CSV "row,col,center_lat,center_lon,value", one row per cell in input order.
void write_heatmap_csv(std::ostream& out, const Grid& grid, std::span<const HeatCell> cells);
/// GeoJSON FeatureCollection of block polygons carrying row/col/value
/// properties, in input order.
void write_heatmap_geojson(std::ostream& out, const Grid& grid,
                           std::span<const HeatCell> cells);

}  // namespace camplan

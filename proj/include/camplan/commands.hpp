#pragma once

#include <iosfwd>
#include <string>

#include "camplan/config.hpp"

namespace camplan {

/// Subcommand bodies shared by the CLI binary and the tests. Each command
/// writes its artifacts under config.output_dir (created if absent), prints
/// a short human-readable summary to `log`, and returns 0. Failures are
/// reported by throwing: DataError for unreadable/invalid inputs,
/// SolverError for optimisation failures; the CLI front end maps these to
/// exit codes.
///
/// Artifact names (all under io.output_dir):
///   synth    trajectories.csv
///   ingest   model.bin, ingest_report.txt
///   place    placement_<S>.txt per strategy; comparison.csv with
///            --all-strategies
///   metrics  metrics_<S>.txt, per_vehicle_<S>.csv with --per-vehicle
///   game     game_<S>.txt, game_solution_<S>.txt
///   export   heatmap_placement_<S>.{csv,geojson} or
///            heatmap_traffic.{csv,geojson}
///
/// `ingest` reads io.input_csv, defaulting to the synth output when unset.
int cmd_synth(const RunConfig& config, std::ostream& log);
int cmd_ingest(const RunConfig& config, std::ostream& log);
int cmd_place(const RunConfig& config, bool all_strategies, std::ostream& log);
int cmd_metrics(const RunConfig& config, bool per_vehicle, std::ostream& log);
int cmd_game(const RunConfig& config, std::ostream& log);
/// source: "placement" or "traffic"; format: "csv" or "geojson".
int cmd_export(const RunConfig& config, const std::string& source, const std::string& format,
               std::ostream& log);

}  // namespace camplan

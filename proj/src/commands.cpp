#include "camplan/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "camplan/coverage.hpp"
#include "camplan/errors.hpp"
#include "camplan/game.hpp"
#include "camplan/io.hpp"
#include "camplan/metrics.hpp"
#include "camplan/placement.hpp"
#include "camplan/synth.hpp"
#include "camplan/trajectory.hpp"

namespace camplan {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.output_dir);
  return (fs::path(config.output_dir) / name).string();
}

std::string input_csv_path(const RunConfig& config) {
  if (!config.input_csv.empty()) return config.input_csv;
  return (fs::path(config.output_dir) / "trajectories.csv").string();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream must_open(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

CoverageModel load_model_artifact(const RunConfig& config) {
  return load_model_file(out_path(config, "model.bin"));
}

Placement load_placement_artifact(const RunConfig& config, Strategy s, Grid* grid_out) {
  const std::string name = std::string("placement_") + strategy_name(s) + ".txt";
  return load_placement_file(out_path(config, name), grid_out);
}

Strategy config_strategy(const RunConfig& config) {
  const auto s = strategy_from_name(config.strategy);
  if (!s) throw DataError("unknown strategy '" + config.strategy + "'");
  return *s;
}

}  // namespace

int cmd_synth(const RunConfig& config, std::ostream& log) {
  config.validate();
  const SynthSpec spec = config.synth_spec();
  const std::string path = out_path(config, "trajectories.csv");
  auto out = must_open(path, std::ios::out | std::ios::binary);
  write_records_csv_header(out);
  int64_t written = 0;
  for (int v = 0; v < spec.n_vehicles; ++v) {
    const std::string id = synth_vehicle_id(spec, v);
    for (const TrackPoint& p : synth_vehicle_track(spec, v)) {
      append_record_csv(out, {id, p});
      ++written;
    }
  }
  out.flush();
  if (!out) throw DataError("write failure on '" + path + "'");
  log << "synth: " << spec.n_vehicles << " vehicles, " << written << " records -> " << path
      << "\n";
  return 0;
}

int cmd_ingest(const RunConfig& config, std::ostream& log) {
  config.validate();
  const std::string in_path = input_csv_path(config);
  std::ifstream in(in_path, std::ios::in | std::ios::binary);
  if (!in) throw DataError("cannot open input CSV '" + in_path + "'");

  ParseResult parsed =
      parse_records(in, config.tdrive ? CsvFormat::tdrive : CsvFormat::standard);

  const Grid grid = config.make_grid();
  const OutlierParams outlier = config.outlier_params();
  IngestReport report;
  report.parse = parsed.report;

  std::vector<BlockVisit> visits;
  for (const Trajectory& traj : parsed.trajectories) {
    FilterResult filtered = filter_outliers(traj, outlier);
    report.removed_speed += filtered.removed_speed;
    report.removed_deviation += filtered.removed_deviation;
    std::vector<BlockVisit> v = segment_dwell(filtered.cleaned, grid, config.max_gap_s);
    visits.insert(visits.end(), std::make_move_iterator(v.begin()),
                  std::make_move_iterator(v.end()));
  }

  std::map<std::string, double> weights;
  if (!config.weights_path.empty()) weights = load_weights_file(config.weights_path);

  const CoverageModel model = CoverageModel::build(grid, visits, std::nullopt, weights);
  report.visits = static_cast<int64_t>(visits.size());
  report.placeable_blocks = static_cast<int64_t>(model.placeable_blocks().size());
  report.span_s = model.measurement_span();

  save_model_file(model, out_path(config, "model.bin"));
  auto rep_out = must_open(out_path(config, "ingest_report.txt"));
  write_ingest_report(rep_out, report);

  log << "ingest: " << parsed.report.log_line() << "\n";
  log << "ingest: removed_speed=" << report.removed_speed
      << " removed_deviation=" << report.removed_deviation << " visits=" << report.visits
      << " placeable_blocks=" << report.placeable_blocks << " span_s=" << fmt(report.span_s)
      << "\n";
  if (parsed.report.records == 0) {
    log << "ingest: warning: no usable records; wrote an empty model\n";
  }
  return 0;
}

int cmd_place(const RunConfig& config, bool all_strategies, std::ostream& log) {
  config.validate();
  const CoverageModel model = load_model_artifact(config);

  std::vector<Strategy> wanted;
  if (all_strategies) {
    wanted.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  } else {
    wanted.push_back(config_strategy(config));
  }

  std::vector<Placement> placements;
  for (Strategy s : wanted) {
    Placement p = greedy_place(model, s, config.n_cameras);
    const std::string name = std::string("placement_") + strategy_name(s) + ".txt";
    save_placement_file(p, model.grid(), out_path(config, name));
    const double objective = p.steps.empty() ? 0.0 : p.steps.back().cumulative;
    log << "place: " << strategy_name(s) << " picked " << p.steps.size() << "/"
        << config.n_cameras << " blocks, objective " << fmt(objective) << "\n";
    placements.push_back(std::move(p));
  }

  if (all_strategies) {
    auto table = must_open(out_path(config, "comparison.csv"));
    table << "strategy,n,ucr,vcr,mean_vch,mean_vuh\n";
    for (std::size_t i = 0; i < placements.size(); ++i) {
      const std::vector<int64_t> blocks = placements[i].blocks();
      for (std::size_t n = 1; n <= blocks.size(); ++n) {
        const std::span<const int64_t> prefix(blocks.data(), n);
        const MetricReport m = compute_metrics(model, prefix);
        table << strategy_name(wanted[i]) << ',' << n << ',' << fmt(m.ucr) << ','
              << fmt(m.vcr) << ',' << fmt(m.vch_stats.mean) << ',' << fmt(m.vuh_stats.mean)
              << '\n';
      }
    }
    table.flush();
    if (!table) throw DataError("write failure on comparison.csv");
    log << "place: wrote comparison.csv\n";
  }
  return 0;
}

int cmd_metrics(const RunConfig& config, bool per_vehicle, std::ostream& log) {
  config.validate();
  const CoverageModel model = load_model_artifact(config);
  const Strategy s = config_strategy(config);
  const Placement placement = load_placement_artifact(config, s, nullptr);
  const std::vector<int64_t> blocks = placement.blocks();
  const MetricReport report = compute_metrics(model, blocks);

  const std::string name = std::string("metrics_") + strategy_name(s) + ".txt";
  auto out = must_open(out_path(config, name));
  write_metrics_report(out, report);
  if (per_vehicle) {
    const std::string csv_name = std::string("per_vehicle_") + strategy_name(s) + ".csv";
    auto csv = must_open(out_path(config, csv_name));
    write_per_vehicle_csv(csv, model, report);
  }
  log << "metrics: " << strategy_name(s) << " n=" << report.n_cameras << " ucr="
      << fmt(report.ucr) << " vcr=" << fmt(report.vcr) << " gini_vch="
      << fmt(report.gini_vch) << "\n";
  return 0;
}

int cmd_game(const RunConfig& config, std::ostream& log) {
  config.validate();
  const CoverageModel model = load_model_artifact(config);
  const Strategy s = config_strategy(config);
  const Placement placement = load_placement_artifact(config, s, nullptr);
  const std::vector<int64_t> blocks = placement.blocks();
  if (blocks.empty()) {
    throw DataError("placement for " + std::string(strategy_name(s)) +
                    " selected no blocks; nothing to defend");
  }

  std::vector<double> importance;
  try {
    importance = importance_from_traffic(model, blocks);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("game: ") + e.what());
  }
  std::vector<std::vector<int>> rows;
  try {
    rows = generate_pure_strategies(static_cast<int>(blocks.size()),
                                    config.game_n_strategies, config.game_k,
                                    config.game_seed);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("game: ") + e.what());
  }
  const GameInstance game = make_zero_sum_game(importance, std::move(rows), blocks);
  save_game_file(game, out_path(config, std::string("game_") + strategy_name(s) + ".txt"));

  const GameSolution sol = solve_mixed_strategy(game);
  const DefenderEval uniform_eval = evaluate_defender(game, uniform_strategy(game));
  const DefenderEval pure_eval = evaluate_defender(game, best_pure_strategy(game));

  const std::string report_name = std::string("game_solution_") + strategy_name(s) + ".txt";
  auto out = must_open(out_path(config, report_name));
  write_game_report(out, game, sol, uniform_eval, pure_eval);

  log << "game: " << strategy_name(s) << " mixed=" << fmt(sol.defender_utility)
      << " uniform=" << fmt(uniform_eval.defender_utility)
      << " best_pure=" << fmt(pure_eval.defender_utility)
      << " attacked_target=" << sol.attacked_target << "\n";
  return 0;
}

int cmd_export(const RunConfig& config, const std::string& source, const std::string& format,
               std::ostream& log) {
  config.validate();
  if (format != "csv" && format != "geojson") {
    throw DataError("export: unknown format '" + format + "'");
  }

  Grid grid;
  std::vector<HeatCell> cells;
  std::string stem;
  if (source == "placement") {
    const Strategy s = config_strategy(config);
    const Placement placement = load_placement_artifact(config, s, &grid);
    for (std::size_t i = 0; i < placement.steps.size(); ++i) {
      cells.push_back({grid.from_linear(placement.steps[i].block),
                       static_cast<double>(i + 1)});
    }
    stem = std::string("heatmap_placement_") + strategy_name(s);
  } else if (source == "traffic") {
    const CoverageModel model = load_model_artifact(config);
    grid = model.grid();
    for (int64_t block : model.placeable_blocks()) {
      cells.push_back({grid.from_linear(block), model.block_traffic(block)});
    }
    stem = "heatmap_traffic";
  } else {
    throw DataError("export: unknown source '" + source + "'");
  }

  const std::string path = out_path(config, stem + (format == "csv" ? ".csv" : ".geojson"));
  auto out = must_open(path);
  if (format == "csv") {
    write_heatmap_csv(out, grid, cells);
  } else {
    write_heatmap_geojson(out, grid, cells);
  }
  log << "export: " << cells.size() << " cells -> " << path << "\n";
  return 0;
}

}  // namespace camplan

// camplan — command-line front end for the camera-placement toolkit.
//
// Subcommands form a pipeline over one output directory:
//   synth -> ingest -> place -> metrics / game / export
//
// Exit codes: 0 success (and --help), 1 usage error, 2 data/config error,
// 3 solver failure.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "camplan/commands.hpp"
#include "camplan/config.hpp"
#include "camplan/errors.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string input;
  std::string output;
  std::string strategy;
  int n_cameras = 0;
  bool tdrive = false;
  bool all_strategies = false;
  bool per_vehicle = false;
  std::string source;
  std::string format = "csv";
};

void add_common_options(CLI::App* sub, CliOptions& opts) {
  sub->add_option("-c,--config", opts.config_path,
                  "Config file with key=value lines ('#' comments)");
  sub->add_option("--set", opts.sets, "Override one config key, e.g. --set seed=7")
      ->type_name("KEY=VALUE")
      ->allow_extra_args(false);
  sub->add_option("-i,--input", opts.input, "Input CSV path (io.input_csv)");
  sub->add_option("-o,--output", opts.output, "Output directory (io.output_dir)");
}

CLI::Option* add_strategy_option(CLI::App* sub, CliOptions& opts) {
  return sub->add_option("-s,--strategy", opts.strategy, "Placement strategy")
      ->check(CLI::IsMember({"S1", "S2", "S3", "S4", "S5"}));
}

bool option_given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

/// Defaults, then the config file, then --set pairs in order, then the
/// dedicated flags — later layers win.
camplan::RunConfig build_config(const CLI::App* sub, const CliOptions& opts) {
  camplan::RunConfig config;
  if (!opts.config_path.empty()) config = camplan::load_config(opts.config_path);
  for (const std::string& pair : opts.sets) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      throw camplan::DataError("--set expects KEY=VALUE, got '" + pair + "'");
    }
    camplan::apply_config_value(config, pair.substr(0, eq), pair.substr(eq + 1));
  }
  if (option_given(sub, "--input")) config.input_csv = opts.input;
  if (option_given(sub, "--output")) config.output_dir = opts.output;
  if (option_given(sub, "--strategy")) config.strategy = opts.strategy;
  if (option_given(sub, "--n-cameras")) config.n_cameras = opts.n_cameras;
  if (option_given(sub, "--tdrive")) config.tdrive = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"camplan — plan fixed camera placements from vehicle GPS traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "camplan 1.0.0");
  CliOptions opts;

  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic trajectory CSV (trajectories.csv)");
  add_common_options(synth, opts);

  CLI::App* ingest = app.add_subcommand(
      "ingest", "Parse, clean, and index a trajectory CSV into model.bin");
  add_common_options(ingest, opts);
  ingest->add_flag("--tdrive", opts.tdrive,
                   "Input is headerless 'id,datetime,lon,lat' taxi format");

  CLI::App* place = app.add_subcommand(
      "place", "Greedy camera placement from model.bin (placement_<S>.txt)");
  add_common_options(place, opts);
  add_strategy_option(place, opts);
  place->add_option("-n,--n-cameras", opts.n_cameras, "Camera budget")
      ->check(CLI::PositiveNumber);
  place->add_flag("--all-strategies", opts.all_strategies,
                  "Run S1..S5 and write comparison.csv");

  CLI::App* metrics = app.add_subcommand(
      "metrics", "Surveillance metrics for a stored placement (metrics_<S>.txt)");
  add_common_options(metrics, opts);
  add_strategy_option(metrics, opts);
  metrics->add_flag("--per-vehicle", opts.per_vehicle,
                    "Also write per_vehicle_<S>.csv");

  CLI::App* game = app.add_subcommand(
      "game", "Solve the camera-upgrade security game for a stored placement");
  add_common_options(game, opts);
  add_strategy_option(game, opts);

  CLI::App* exp = app.add_subcommand(
      "export", "Export a heatmap of a placement or of observed traffic");
  add_common_options(exp, opts);
  add_strategy_option(exp, opts);
  exp->add_option("--source", opts.source, "What to export")
      ->required()
      ->check(CLI::IsMember({"placement", "traffic"}));
  exp->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "geojson"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const camplan::RunConfig config = build_config(sub, opts);
    if (sub == synth) return camplan::cmd_synth(config, std::cout);
    if (sub == ingest) return camplan::cmd_ingest(config, std::cout);
    if (sub == place) return camplan::cmd_place(config, opts.all_strategies, std::cout);
    if (sub == metrics) return camplan::cmd_metrics(config, opts.per_vehicle, std::cout);
    if (sub == game) return camplan::cmd_game(config, std::cout);
    if (sub == exp) return camplan::cmd_export(config, opts.source, opts.format, std::cout);
    std::cerr << "error: unknown subcommand\n";
    return 1;
  } catch (const camplan::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const camplan::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

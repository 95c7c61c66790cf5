#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ltcsim/errors.hpp"
#include "ltcsim/pipeline.hpp"
#include "ltcsim/scenario.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::vector<std::string> traces;  // assess/plot only
};

ltcsim::ScenarioConfig resolve_config(const CommonArgs& args) {
  ltcsim::ScenarioConfig cfg = args.config_path.empty()
                                   ? ltcsim::default_config()
                                   : ltcsim::load_config(args.config_path);
  if (args.seed) {
    cfg.seed_data = *args.seed;
    cfg.seed_training = *args.seed + 1;
    cfg.seed_simulation = *args.seed + 2;
  }
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  for (const auto& kv : args.overrides) ltcsim::apply_override(cfg, kv);
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_traces = false) {
  cmd->add_option("--config", args.config_path, "Scenario config JSON (defaults built in)");
  cmd->add_option("--seed", args.seed, "Base seed (sets data/training/simulation seeds)");
  cmd->add_option("--out", args.out_dir, "Output directory (overrides config out_dir)");
  cmd->add_option("--set", args.overrides, "Override a config field, e.g. demand.base_mg_per_h=0.03")
      ->take_all();
  if (with_traces)
    cmd->add_option("--trace", args.traces, "Trace directory (repeatable; default: all runs)")
        ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled natural-industrial ecosystem simulation with LTC surrogate models"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string dump_config_path;

  auto* gen = app.add_subcommand("gen-data", "Generate synthetic datasets");
  add_common(gen, args);
  auto* train = app.add_subcommand("train", "Train node models and controllers");
  add_common(train, args);
  auto* simulate = app.add_subcommand("simulate", "Run the horizon simulation per farm/preset");
  add_common(simulate, args);
  auto* sweep = app.add_subcommand("sweep", "Simulate all pairs and write a comparison table");
  add_common(sweep, args);
  auto* assess = app.add_subcommand("assess", "Resilience assessment over traces");
  add_common(assess, args, true);
  auto* plot = app.add_subcommand("plot", "Emit SVG charts from traces");
  add_common(plot, args, true);
  auto* config_cmd = app.add_subcommand("config", "Write the effective config to a file");
  add_common(config_cmd, args);
  config_cmd->add_option("--dump", dump_config_path, "Where to write the config JSON")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const ltcsim::ScenarioConfig cfg = resolve_config(args);
    std::vector<std::filesystem::path> trace_dirs(args.traces.begin(), args.traces.end());
    if (gen->parsed()) ltcsim::pipeline::cmd_gen_data(cfg, std::cout);
    if (train->parsed()) ltcsim::pipeline::cmd_train(cfg, std::cout);
    if (simulate->parsed()) ltcsim::pipeline::cmd_simulate(cfg, std::cout);
    if (sweep->parsed()) ltcsim::pipeline::cmd_sweep(cfg, std::cout);
    if (assess->parsed()) ltcsim::pipeline::cmd_assess(cfg, trace_dirs, std::cout);
    if (plot->parsed()) ltcsim::pipeline::cmd_plot(cfg, trace_dirs, std::cout);
    if (config_cmd->parsed()) ltcsim::save_config(cfg, dump_config_path);
  } catch (const ltcsim::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid_argument: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

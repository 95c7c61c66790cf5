#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ltcsim/resilience.hpp"
#include "ltcsim/scenario.hpp"
#include "ltcsim/simulate.hpp"

namespace ltcsim::pipeline {

// File layout under the configured output directory.
std::filesystem::path data_dir(const ScenarioConfig& cfg);
std::filesystem::path models_dir(const ScenarioConfig& cfg);
std::filesystem::path runs_dir(const ScenarioConfig& cfg);
std::filesystem::path reports_dir(const ScenarioConfig& cfg);
std::filesystem::path plots_dir(const ScenarioConfig& cfg);
std::string run_name(double farm_ha, const std::string& preset);

// Soybeans needed per unit of diesel demand at the plants' nominal operating
// point; used to size default thresholds.
double soy_per_diesel(const PlantSpec& oil_spec, const PlantSpec& diesel_spec);
Thresholds thresholds_for(const ScenarioConfig& cfg);

// gen-data: plant, climate, growth and demand CSVs plus metadata sidecars.
void cmd_gen_data(const ScenarioConfig& cfg, std::ostream& log);

// train: oil/diesel plants, growth per climate preset, then both controllers
// on the frozen plants. Writes model files and loss histories, prints
// held-out RMSEs to the log.
void cmd_train(const ScenarioConfig& cfg, std::ostream& log);

// simulate: one trace per (farm size, climate preset) pair.
void cmd_simulate(const ScenarioConfig& cfg, std::ostream& log);

// sweep: simulate plus a comparison table across runs.
void cmd_sweep(const ScenarioConfig& cfg, std::ostream& log);

// assess / plot over previously written traces (all runs when dirs is empty).
void cmd_assess(const ScenarioConfig& cfg, const std::vector<std::filesystem::path>& dirs,
                std::ostream& log);
void cmd_plot(const ScenarioConfig& cfg, const std::vector<std::filesystem::path>& dirs,
              std::ostream& log);

// Shared helpers (also used by the acceptance suite).
struct TrainedRmse {
  std::map<std::string, double> pooled;  // model name -> pooled held-out RMSE
  // plant parameters compared bitwise across controller training
  bool controller_freeze_intact = false;
};
TrainedRmse train_all(const ScenarioConfig& cfg, std::ostream& log);
SimulationTrace simulate_pair(const ScenarioConfig& cfg, double farm_ha,
                              const std::string& preset);
std::vector<std::filesystem::path> list_run_dirs(const ScenarioConfig& cfg);

struct SweepRow {
  double farm_ha;
  std::string preset;
  int first_failure_year;  // -1 when none
  long failures_total;
  double waste_cum_mg;
  double import_cum_mg;
  double final_stock_mg;
};
std::vector<SweepRow> sweep_summary(const ScenarioConfig& cfg);
void write_sweep_summary_csv(const std::filesystem::path& path,
                             const std::vector<SweepRow>& rows);

}  // namespace ltcsim::pipeline

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ltcsim/generators.hpp"
#include "ltcsim/training.hpp"

namespace ltcsim {

// Hyperparameters for one node model.
struct NodeModelConfig {
  int hidden = 12;
  int epochs = 125;
  double learning_rate = 0.01;
  int bptt_window = 64;  // 0 = full episode
  int batch = 1;

  TrainConfig train_config(std::uint64_t seed) const;
};

// Everything a pipeline run needs: generators, hyperparameters, horizon,
// seeds and output location. Serialized as a single JSON document with a
// documented schema; individual fields can be overridden with --set key=value.
struct ScenarioConfig {
  std::filesystem::path out_dir = "out";

  std::uint64_t seed_data = 101;
  std::uint64_t seed_training = 202;
  std::uint64_t seed_simulation = 303;

  int start_year = 2006;
  int end_year = 2096;
  std::vector<double> farm_sizes_ha = {450.0, 500.0, 550.0};
  std::vector<std::string> climate_presets = {"rcp45like", "rcp85like"};

  DemandSpec demand;
  PlantSpec oil_plant;
  PlantSpec diesel_plant;
  GrowthConfig growth;

  long plant_hours = 10000;
  int growth_seasons = 90;
  double train_fraction = 0.8;

  NodeModelConfig oil_plant_model{12, 125, 0.01, 64, 1};
  NodeModelConfig diesel_plant_model{12, 125, 0.01, 64, 1};
  NodeModelConfig growth_model{20, 200, 0.01, 0, 8};
  NodeModelConfig oil_controller_model{8, 125, 0.01, 64, 1};
  NodeModelConfig diesel_controller_model{12, 125, 0.01, 64, 1};

  double initial_stock_mg = 1250.0;
  int stock_expiry_years = 3;
  int period_hours = 168;
  std::optional<double> threshold_min_mg;  // unset -> derived from demand
  std::optional<double> threshold_max_mg;

  int horizon_years() const { return end_year - start_year + 1; }
  void validate() const;
};

ScenarioConfig default_config();
ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path);

// Applies a `key=value` override with dotted paths into the JSON form, e.g.
// "models.growth.epochs=50" or "demand.base_mg_per_h=0.03".
void apply_override(ScenarioConfig& cfg, const std::string& key_eq_value);

// Canonical JSON text of a config (used for metadata sidecars).
std::string config_to_json_text(const ScenarioConfig& cfg);

// Same, with the output directory normalized away so metadata written under
// different out_dirs stays byte-identical.
std::string config_fingerprint_text(const ScenarioConfig& cfg);

}  // namespace ltcsim

#include "ltcsim/scenario.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "ltcsim/errors.hpp"

namespace ltcsim {

using nlohmann::json;

TrainConfig NodeModelConfig::train_config(std::uint64_t seed) const {
  TrainConfig tc;
  tc.epochs = epochs;
  tc.learning_rate = learning_rate;
  tc.bptt_window = bptt_window;
  tc.batch = batch;
  tc.seed = seed;
  return tc;
}

void ScenarioConfig::validate() const {
  if (end_year < start_year) throw std::invalid_argument("config: horizon must be >= 1 year");
  if (farm_sizes_ha.empty()) throw std::invalid_argument("config: need at least one farm size");
  for (double f : farm_sizes_ha)
    if (!(f > 0.0)) throw std::invalid_argument("config: farm sizes must be > 0");
  if (climate_presets.empty())
    throw std::invalid_argument("config: need at least one climate preset");
  for (const auto& p : climate_presets)
    climate_preset(p, 1, 0);  // throws on unknown preset names
  demand.validate();
  oil_plant.validate();
  diesel_plant.validate();
  if (plant_hours < 100) throw std::invalid_argument("config: plant_hours too small");
  if (growth_seasons < 3) throw std::invalid_argument("config: growth_seasons too small");
  if (period_hours < 1 || period_hours > kHoursPerYear)
    throw std::invalid_argument("config: bad period_hours");
  if (initial_stock_mg < 0.0) throw std::invalid_argument("config: negative initial stock");
}

ScenarioConfig default_config() {
  ScenarioConfig cfg;

  cfg.oil_plant.name = "oil_plant";
  cfg.oil_plant.inputs = {{"soybean_mg_h", 0.0, 0.35}, {"hexane_mg_h", 0.0, 0.18}};
  cfg.oil_plant.outputs = {"oil_mg_h", "meal_mg_h"};
  cfg.oil_plant.yield_matrix.resize(2, 2);
  cfg.oil_plant.yield_matrix << 0.18, 0.0, 0.78, 0.0;
  cfg.oil_plant.lag_hours.resize(2);
  cfg.oil_plant.lag_hours << 2.0, 2.0;
  cfg.oil_plant.noise_std = 0.02;
  cfg.oil_plant.solvent_ratio = 0.15;
  cfg.oil_plant.route_unconverted_to = 1;

  cfg.diesel_plant.name = "diesel_plant";
  cfg.diesel_plant.inputs = {{"oil_mg_h", 0.0, 0.07}, {"water_mg_h", 0.0, 0.035}};
  cfg.diesel_plant.outputs = {"diesel_mg_h", "recycle_mg_h"};
  cfg.diesel_plant.yield_matrix.resize(2, 2);
  cfg.diesel_plant.yield_matrix << 0.96, 0.0, 0.03, 0.0;
  cfg.diesel_plant.lag_hours.resize(2);
  cfg.diesel_plant.lag_hours << 3.0, 1.0;
  cfg.diesel_plant.noise_std = 0.02;
  cfg.diesel_plant.solvent_ratio = 0.15;
  cfg.diesel_plant.route_unconverted_to = 1;

  return cfg;
}

namespace {

json port_to_json(const PortSpec& p) {
  return {{"name", p.name}, {"lo_mg_h", p.lo_mg_h}, {"hi_mg_h", p.hi_mg_h}};
}

PortSpec port_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("lo_mg_h").get<double>(),
          j.at("hi_mg_h").get<double>()};
}

json plant_to_json(const PlantSpec& p) {
  json j;
  j["name"] = p.name;
  j["inputs"] = json::array();
  for (const auto& port : p.inputs) j["inputs"].push_back(port_to_json(port));
  j["outputs"] = p.outputs;
  json ym = json::array();
  for (Eigen::Index r = 0; r < p.yield_matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < p.yield_matrix.cols(); ++c)
      row.push_back(p.yield_matrix(r, c));
    ym.push_back(std::move(row));
  }
  j["yield_matrix"] = std::move(ym);
  j["lag_hours"] = std::vector<double>(p.lag_hours.data(),
                                       p.lag_hours.data() + p.lag_hours.size());
  j["noise_std"] = p.noise_std;
  j["solvent_ratio"] = p.solvent_ratio;
  j["route_unconverted_to"] = p.route_unconverted_to;
  return j;
}

PlantSpec plant_from_json(const json& j) {
  PlantSpec p;
  p.name = j.at("name").get<std::string>();
  for (const auto& port : j.at("inputs")) p.inputs.push_back(port_from_json(port));
  p.outputs = j.at("outputs").get<std::vector<std::string>>();
  const auto& ym = j.at("yield_matrix");
  p.yield_matrix.resize(static_cast<Eigen::Index>(ym.size()),
                        static_cast<Eigen::Index>(p.inputs.size()));
  for (Eigen::Index r = 0; r < p.yield_matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < p.yield_matrix.cols(); ++c)
      p.yield_matrix(r, c) =
          ym[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
  const auto lags = j.at("lag_hours").get<std::vector<double>>();
  p.lag_hours = Eigen::Map<const Eigen::VectorXd>(lags.data(),
                                                  static_cast<Eigen::Index>(lags.size()));
  p.noise_std = j.at("noise_std").get<double>();
  p.solvent_ratio = j.at("solvent_ratio").get<double>();
  p.route_unconverted_to = j.at("route_unconverted_to").get<int>();
  return p;
}

json node_model_to_json(const NodeModelConfig& m) {
  return {{"hidden", m.hidden},
          {"epochs", m.epochs},
          {"learning_rate", m.learning_rate},
          {"bptt_window", m.bptt_window},
          {"batch", m.batch}};
}

NodeModelConfig node_model_from_json(const json& j) {
  NodeModelConfig m;
  m.hidden = j.at("hidden").get<int>();
  m.epochs = j.at("epochs").get<int>();
  m.learning_rate = j.at("learning_rate").get<double>();
  m.bptt_window = j.at("bptt_window").get<int>();
  m.batch = j.at("batch").get<int>();
  return m;
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["schema"] = "ltcsim.config";
  j["schema_version"] = 1;
  j["out_dir"] = c.out_dir.string();
  j["seeds"] = {{"data", c.seed_data},
                {"training", c.seed_training},
                {"simulation", c.seed_simulation}};
  j["horizon"] = {{"start_year", c.start_year}, {"end_year", c.end_year}};
  j["farm_sizes_ha"] = c.farm_sizes_ha;
  j["climate_presets"] = c.climate_presets;
  j["demand"] = {{"base_mg_per_h", c.demand.base_mg_per_h},
                 {"annual_growth", c.demand.annual_growth},
                 {"seasonal_amplitude", c.demand.seasonal_amplitude},
                 {"noise_std", c.demand.noise_std}};
  j["plants"] = {{"oil", plant_to_json(c.oil_plant)},
                 {"diesel", plant_to_json(c.diesel_plant)}};
  j["growth"] = {{"capacity_mg_per_ha", c.growth.capacity_mg_per_ha},
                 {"logistic_rate_per_h", c.growth.logistic_rate_per_h},
                 {"initial_biomass_fraction", c.growth.initial_biomass_fraction},
                 {"gdd_base_c", c.growth.gdd_base_c},
                 {"gdd_cap_c", c.growth.gdd_cap_c},
                 {"heat_threshold_c", c.growth.heat_threshold_c},
                 {"heat_memory_hours", c.growth.heat_memory_hours},
                 {"heat_ema_sensitivity", c.growth.heat_ema_sensitivity},
                 {"heat_cum_sensitivity", c.growth.heat_cum_sensitivity},
                 {"water_memory_hours", c.growth.water_memory_hours},
                 {"water_req_mm_per_day_per_degc", c.growth.water_req_mm_per_day_per_degc},
                 {"water_buffer_mm_per_day", c.growth.water_buffer_mm_per_day},
                 {"water_floor", c.growth.water_floor}};
  j["data"] = {{"plant_hours", c.plant_hours},
               {"growth_seasons", c.growth_seasons},
               {"train_fraction", c.train_fraction}};
  j["models"] = {{"oil_plant", node_model_to_json(c.oil_plant_model)},
                 {"diesel_plant", node_model_to_json(c.diesel_plant_model)},
                 {"growth", node_model_to_json(c.growth_model)},
                 {"oil_controller", node_model_to_json(c.oil_controller_model)},
                 {"diesel_controller", node_model_to_json(c.diesel_controller_model)}};
  j["simulation"] = {{"initial_stock_mg", c.initial_stock_mg},
                     {"stock_expiry_years", c.stock_expiry_years},
                     {"period_hours", c.period_hours}};
  j["thresholds"] = json::object();
  if (c.threshold_min_mg) j["thresholds"]["min_mg"] = *c.threshold_min_mg;
  if (c.threshold_max_mg) j["thresholds"]["max_mg"] = *c.threshold_max_mg;
  return j;
}

ScenarioConfig config_from_json(const json& j) {
  try {
    if (j.value("schema", "") != "ltcsim.config")
      throw SchemaMismatch("config: missing schema marker ltcsim.config");
    ScenarioConfig c = default_config();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.seed_data = j.at("seeds").at("data").get<std::uint64_t>();
    c.seed_training = j.at("seeds").at("training").get<std::uint64_t>();
    c.seed_simulation = j.at("seeds").at("simulation").get<std::uint64_t>();
    c.start_year = j.at("horizon").at("start_year").get<int>();
    c.end_year = j.at("horizon").at("end_year").get<int>();
    c.farm_sizes_ha = j.at("farm_sizes_ha").get<std::vector<double>>();
    c.climate_presets = j.at("climate_presets").get<std::vector<std::string>>();
    const auto& d = j.at("demand");
    c.demand.base_mg_per_h = d.at("base_mg_per_h").get<double>();
    c.demand.annual_growth = d.at("annual_growth").get<double>();
    c.demand.seasonal_amplitude = d.at("seasonal_amplitude").get<double>();
    c.demand.noise_std = d.at("noise_std").get<double>();
    c.oil_plant = plant_from_json(j.at("plants").at("oil"));
    c.diesel_plant = plant_from_json(j.at("plants").at("diesel"));
    const auto& g = j.at("growth");
    c.growth.capacity_mg_per_ha = g.at("capacity_mg_per_ha").get<double>();
    c.growth.logistic_rate_per_h = g.at("logistic_rate_per_h").get<double>();
    c.growth.initial_biomass_fraction = g.at("initial_biomass_fraction").get<double>();
    c.growth.gdd_base_c = g.at("gdd_base_c").get<double>();
    c.growth.gdd_cap_c = g.at("gdd_cap_c").get<double>();
    c.growth.heat_threshold_c = g.at("heat_threshold_c").get<double>();
    c.growth.heat_memory_hours = g.at("heat_memory_hours").get<double>();
    c.growth.heat_ema_sensitivity = g.at("heat_ema_sensitivity").get<double>();
    c.growth.heat_cum_sensitivity = g.at("heat_cum_sensitivity").get<double>();
    c.growth.water_memory_hours = g.at("water_memory_hours").get<double>();
    c.growth.water_req_mm_per_day_per_degc =
        g.at("water_req_mm_per_day_per_degc").get<double>();
    c.growth.water_buffer_mm_per_day = g.at("water_buffer_mm_per_day").get<double>();
    c.growth.water_floor = g.at("water_floor").get<double>();
    const auto& dd = j.at("data");
    c.plant_hours = dd.at("plant_hours").get<long>();
    c.growth_seasons = dd.at("growth_seasons").get<int>();
    c.train_fraction = dd.at("train_fraction").get<double>();
    const auto& m = j.at("models");
    c.oil_plant_model = node_model_from_json(m.at("oil_plant"));
    c.diesel_plant_model = node_model_from_json(m.at("diesel_plant"));
    c.growth_model = node_model_from_json(m.at("growth"));
    c.oil_controller_model = node_model_from_json(m.at("oil_controller"));
    c.diesel_controller_model = node_model_from_json(m.at("diesel_controller"));
    const auto& s = j.at("simulation");
    c.initial_stock_mg = s.at("initial_stock_mg").get<double>();
    c.stock_expiry_years = s.at("stock_expiry_years").get<int>();
    c.period_hours = s.at("period_hours").get<int>();
    const auto& th = j.at("thresholds");
    if (th.contains("min_mg")) c.threshold_min_mg = th.at("min_mg").get<double>();
    if (th.contains("max_mg")) c.threshold_max_mg = th.at("max_mg").get<double>();
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("config: malformed document: ") + e.what());
  }
}

}  // namespace

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_config: cannot open " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw SchemaMismatch("load_config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("save_config: cannot open " + path.string());
  f << config_to_json(cfg).dump(2) << '\n';
}

void apply_override(ScenarioConfig& cfg, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("--set expects key=value, got: " + key_eq_value);
  const std::string key = key_eq_value.substr(0, eq);
  const std::string value = key_eq_value.substr(eq + 1);

  std::string pointer = "/";
  for (char ch : key) pointer += ch == '.' ? '/' : ch;

  json j = config_to_json(cfg);
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare strings are allowed unquoted
  }
  try {
    j[json::json_pointer(pointer)] = parsed;
  } catch (const json::exception& e) {
    throw std::invalid_argument("--set: bad key '" + key + "': " + e.what());
  }
  cfg = config_from_json(j);
}

std::string config_to_json_text(const ScenarioConfig& cfg) {
  return config_to_json(cfg).dump();
}

std::string config_fingerprint_text(const ScenarioConfig& cfg) {
  ScenarioConfig c = cfg;
  c.out_dir = ".";
  return config_to_json(c).dump();
}

}  // namespace ltcsim
